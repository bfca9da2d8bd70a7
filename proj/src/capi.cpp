#include "solquo/solquo.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "solquo/collector.hpp"
#include "solquo/covering.hpp"
#include "solquo/driver.hpp"
#include "solquo/errors.hpp"
#include "solquo/report.hpp"

struct solquo_pc {
  solquo::PcPresentation pc;
};

struct solquo_fp {
  solquo::FpPresentation fp;
};

struct solquo_options {
  solquo::DriverConfig config;
  solquo_progress_fn progress = nullptr;
  void* user = nullptr;
};

struct solquo_result {
  solquo::FpPresentation fp;
  solquo::QuotientResult result;
  solquo_pc pc;
};

namespace {

thread_local std::string last_error;

solquo_status status_of(solquo::ErrorKind k) {
  using solquo::ErrorKind;
  switch (k) {
    case ErrorKind::parse:
      return SOLQUO_ERR_PARSE;
    case ErrorKind::invalid_presentation:
      return SOLQUO_ERR_INVALID_PRESENTATION;
    case ErrorKind::invalid_epimorphism:
      return SOLQUO_ERR_EPIMORPHISM;
    case ErrorKind::ceiling:
      return SOLQUO_ERR_CEILING;
    case ErrorKind::inconsistent:
      return SOLQUO_ERR_INCONSISTENT;
    case ErrorKind::argument:
      return SOLQUO_ERR_ARGUMENT;
    case ErrorKind::internal:
      break;
  }
  return SOLQUO_ERR_INTERNAL;
}

template <class F>
solquo_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const solquo::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SOLQUO_ERR_CEILING;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SOLQUO_ERR_INTERNAL;
  }
}

solquo_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return SOLQUO_ERR_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

solquo::DriverConfig config_of(const solquo_options* o) {
  if (!o) return {};
  solquo::DriverConfig c = o->config;
  if (o->progress) {
    auto fn = o->progress;
    void* user = o->user;
    c.progress = [fn, user](const solquo::StepReport& r) {
      std::string order = r.order.str();
      solquo_progress info{r.prime, r.step, r.module_rank, r.dimension, order.c_str(),
                           r.elapsed.count()};
      fn(&info, user);
    };
  }
  return c;
}

}  // namespace

extern "C" {

const char* solquo_last_error(void) { return last_error.c_str(); }

const char* solquo_version(void) { return "0.1.0"; }

void solquo_string_free(char* s) { delete[] s; }

solquo_options* solquo_options_new(void) { return new (std::nothrow) solquo_options(); }

void solquo_options_free(solquo_options* o) { delete o; }

solquo_status solquo_options_set_threads(solquo_options* o, unsigned threads) {
  if (!o) return null_argument("options");
  o->config.cover.threads = threads == 0 ? 1 : threads;
  return SOLQUO_OK;
}

solquo_status solquo_options_set_max_order(solquo_options* o, const char* decimal) {
  if (!o || !decimal) return null_argument("options");
  return guarded([&] {
    std::string s(decimal);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw solquo::Error(solquo::ErrorKind::argument, "order ceiling must be a decimal integer");
    }
    o->config.max_order = solquo::BigInt(s);
    return SOLQUO_OK;
  });
}

solquo_status solquo_options_set_max_dim(solquo_options* o, size_t dim) {
  if (!o) return null_argument("options");
  o->config.solver.max_dim = dim;
  return SOLQUO_OK;
}

solquo_status solquo_options_set_max_rows(solquo_options* o, uint64_t rows) {
  if (!o) return null_argument("options");
  o->config.solver.max_rows = rows;
  return SOLQUO_OK;
}

solquo_status solquo_options_set_progress(solquo_options* o, solquo_progress_fn fn, void* user) {
  if (!o) return null_argument("options");
  o->progress = fn;
  o->user = user;
  return SOLQUO_OK;
}

solquo_status solquo_pc_parse(const char* text, solquo_pc** out) {
  if (!text || !out) return null_argument("text");
  *out = nullptr;
  return guarded([&] {
    *out = new solquo_pc{solquo::parse_pc_presentation(text)};
    return SOLQUO_OK;
  });
}

void solquo_pc_free(solquo_pc* pc) { delete pc; }

size_t solquo_pc_size(const solquo_pc* pc) { return pc ? pc->pc.size() : 0; }

solquo_status solquo_pc_format(const solquo_pc* pc, solquo_format format, char** out) {
  if (!pc || !out) return null_argument("presentation");
  return guarded([&] {
    *out = copy_string(format == SOLQUO_JSON ? solquo::pc_to_json(pc->pc)
                                             : solquo::format_pc_presentation(pc->pc));
    return SOLQUO_OK;
  });
}

solquo_status solquo_pc_check(const solquo_pc* pc, const solquo_options* o, int* consistent,
                              char** report) {
  if (!pc || !consistent) return null_argument("presentation");
  return guarded([&] {
    auto r = solquo::consistency_check(pc->pc, o ? o->config.cover.threads : 1);
    *consistent = r.consistent() ? 1 : 0;
    if (report) *report = copy_string(solquo::format_consistency_report(pc->pc, r));
    return SOLQUO_OK;
  });
}

solquo_status solquo_pc_collect(const solquo_pc* pc, const char* word, char** out) {
  if (!pc || !word || !out) return null_argument("word");
  return guarded([&] {
    auto w = solquo::parse_pc_word(pc->pc, word);
    *out = copy_string(solquo::format_normal_word(pc->pc, solquo::collect(pc->pc, w)));
    return SOLQUO_OK;
  });
}

solquo_status solquo_pc_order(const solquo_pc* pc, char** decimal, char** factorization) {
  if (!pc) return null_argument("presentation");
  return guarded([&] {
    auto n = solquo::order(pc->pc);
    if (decimal) *decimal = copy_string(n.str());
    if (factorization) {
      *factorization =
          copy_string(solquo::format_factorization(solquo::order_factorization(pc->pc)));
    }
    return SOLQUO_OK;
  });
}

solquo_status solquo_pc_cover(const solquo_pc* pc, uint32_t prime, const solquo_options* o,
                              solquo_pc** out) {
  if (!pc || !out) return null_argument("presentation");
  *out = nullptr;
  return guarded([&] {
    solquo::DriverConfig c = config_of(o);
    if (!solquo::consistency_check(pc->pc, c.cover.threads).consistent()) {
      throw solquo::Error(solquo::ErrorKind::inconsistent, "presentation is inconsistent");
    }
    solquo::PcPresentation k = pc->pc;
    solquo::infer_definitions(k);
    *out = new solquo_pc{solquo::l_cover(k, prime, c.cover, c.solver)};
    return SOLQUO_OK;
  });
}

solquo_status solquo_fp_parse(const char* text, solquo_fp** out) {
  if (!text || !out) return null_argument("text");
  *out = nullptr;
  return guarded([&] {
    *out = new solquo_fp{solquo::parse_fp_presentation(text)};
    return SOLQUO_OK;
  });
}

void solquo_fp_free(solquo_fp* fp) { delete fp; }

solquo_status solquo_run(const solquo_fp* fp, const char* series, const solquo_options* o,
                         solquo_result** out) {
  if (!fp || !series || !out) return null_argument("presentation");
  *out = nullptr;
  return guarded([&] {
    solquo::LSpec spec = solquo::parse_lspec(series);
    auto r = new solquo_result{fp->fp, solquo::soluble_quotient(fp->fp, spec, config_of(o)), {}};
    r->pc.pc = r->result.pc;
    *out = r;
    if (r->result.ceiling) {
      last_error = *r->result.ceiling;
      return SOLQUO_ERR_CEILING;
    }
    return SOLQUO_OK;
  });
}

void solquo_result_free(solquo_result* r) { delete r; }

solquo_status solquo_result_format(const solquo_result* r, solquo_format format, char** out) {
  if (!r || !out) return null_argument("result");
  return guarded([&] {
    *out = copy_string(format == SOLQUO_JSON ? solquo::result_to_json(r->fp, r->result)
                                             : solquo::result_to_text(r->fp, r->result));
    return SOLQUO_OK;
  });
}

solquo_status solquo_result_order(const solquo_result* r, char** decimal) {
  if (!r || !decimal) return null_argument("result");
  return guarded([&] {
    solquo::BigInt n = 1;
    for (auto p : r->result.pc.primes()) n *= p;
    *decimal = copy_string(n.str());
    return SOLQUO_OK;
  });
}

const solquo_pc* solquo_result_pc(const solquo_result* r) { return r ? &r->pc : nullptr; }

}  // extern "C"
