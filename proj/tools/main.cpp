// solquo: command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "solquo/solquo.h"

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kParse = 1;
constexpr int kEpimorphism = 2;
constexpr int kCeiling = 3;
constexpr int kInconsistent = 4;
constexpr int kOther = 5;

int exit_code(solquo_status s) {
  switch (s) {
    case SOLQUO_OK:
      return kOk;
    case SOLQUO_ERR_PARSE:
    case SOLQUO_ERR_INVALID_PRESENTATION:
    case SOLQUO_ERR_ARGUMENT:
      return kParse;
    case SOLQUO_ERR_EPIMORPHISM:
      return kEpimorphism;
    case SOLQUO_ERR_CEILING:
      return kCeiling;
    case SOLQUO_ERR_INCONSISTENT:
      return kInconsistent;
    default:
      return kOther;
  }
}

struct Freer {
  void operator()(char* s) const { solquo_string_free(s); }
  void operator()(solquo_pc* p) const { solquo_pc_free(p); }
  void operator()(solquo_fp* p) const { solquo_fp_free(p); }
  void operator()(solquo_result* p) const { solquo_result_free(p); }
  void operator()(solquo_options* p) const { solquo_options_free(p); }
};
template <class T>
using Owned = std::unique_ptr<T, Freer>;

std::optional<std::string> slurp(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int fail(solquo_status s) {
  std::cerr << "solquo: " << solquo_last_error() << "\n";
  return exit_code(s);
}

struct Settings {
  std::string file;
  std::string series;
  std::string format = "text";
  std::string word;
  unsigned threads = 1;
  std::string max_order = "1000000000";
  std::size_t max_dim = 4096;
  std::uint64_t max_rows = std::uint64_t{1} << 24;
  bool progress = false;
  std::uint32_t prime = 0;
};

solquo_format format_of(const Settings& s) {
  return s.format == "structured" ? SOLQUO_JSON : SOLQUO_TEXT;
}

void report_progress(const solquo_progress* p, void*) {
  std::fprintf(stderr, "p = %u step %u: rank %zu, dimension %zu, order %s (%.3fs)\n", p->prime,
               p->step, p->module_rank, p->dimension, p->order, p->seconds);
}

int make_options(const Settings& s, Owned<solquo_options>& out) {
  out.reset(solquo_options_new());
  solquo_status st;
  if ((st = solquo_options_set_threads(out.get(), s.threads)) != SOLQUO_OK) return fail(st);
  if ((st = solquo_options_set_max_order(out.get(), s.max_order.c_str())) != SOLQUO_OK) {
    return fail(st);
  }
  if ((st = solquo_options_set_max_dim(out.get(), s.max_dim)) != SOLQUO_OK) return fail(st);
  if ((st = solquo_options_set_max_rows(out.get(), s.max_rows)) != SOLQUO_OK) return fail(st);
  if (s.progress) solquo_options_set_progress(out.get(), report_progress, nullptr);
  return kOk;
}

int read_pc(const Settings& s, Owned<solquo_pc>& out) {
  auto text = slurp(s.file);
  if (!text) {
    std::cerr << "solquo: cannot read " << s.file << "\n";
    return kParse;
  }
  solquo_pc* pc = nullptr;
  solquo_status st = solquo_pc_parse(text->c_str(), &pc);
  out.reset(pc);
  return st == SOLQUO_OK ? kOk : fail(st);
}

int cmd_run(const Settings& s) {
  auto text = slurp(s.file);
  if (!text) {
    std::cerr << "solquo: cannot read " << s.file << "\n";
    return kParse;
  }
  solquo_fp* raw = nullptr;
  solquo_status st = solquo_fp_parse(text->c_str(), &raw);
  Owned<solquo_fp> fp(raw);
  if (st != SOLQUO_OK) return fail(st);
  Owned<solquo_options> opts;
  if (int rc = make_options(s, opts)) return rc;
  solquo_result* res_raw = nullptr;
  st = solquo_run(fp.get(), s.series.c_str(), opts.get(), &res_raw);
  Owned<solquo_result> res(res_raw);
  const solquo_status run_status = st;
  std::string run_error = solquo_last_error();
  if (res) {
    char* out = nullptr;
    if ((st = solquo_result_format(res.get(), format_of(s), &out)) != SOLQUO_OK) return fail(st);
    Owned<char> holder(out);
    std::cout << out;
  }
  if (run_status != SOLQUO_OK) {
    std::cerr << "solquo: " << run_error << "\n";
    return exit_code(run_status);
  }
  return kOk;
}

int cmd_check(const Settings& s) {
  Owned<solquo_pc> pc;
  if (int rc = read_pc(s, pc)) return rc;
  Owned<solquo_options> opts;
  if (int rc = make_options(s, opts)) return rc;
  int consistent = 0;
  char* report = nullptr;
  solquo_status st = solquo_pc_check(pc.get(), opts.get(), &consistent, &report);
  Owned<char> holder(report);
  if (st != SOLQUO_OK) return fail(st);
  std::cout << report;
  return consistent ? kOk : kInconsistent;
}

int cmd_collect(const Settings& s) {
  Owned<solquo_pc> pc;
  if (int rc = read_pc(s, pc)) return rc;
  char* out = nullptr;
  solquo_status st = solquo_pc_collect(pc.get(), s.word.c_str(), &out);
  Owned<char> holder(out);
  if (st != SOLQUO_OK) return fail(st);
  std::cout << out << "\n";
  return kOk;
}

int cmd_cover(const Settings& s) {
  Owned<solquo_pc> pc;
  if (int rc = read_pc(s, pc)) return rc;
  Owned<solquo_options> opts;
  if (int rc = make_options(s, opts)) return rc;
  solquo_pc* raw = nullptr;
  solquo_status st = solquo_pc_cover(pc.get(), s.prime, opts.get(), &raw);
  Owned<solquo_pc> cover(raw);
  if (st != SOLQUO_OK) return fail(st);
  char* out = nullptr;
  if ((st = solquo_pc_format(cover.get(), format_of(s), &out)) != SOLQUO_OK) return fail(st);
  Owned<char> holder(out);
  if (format_of(s) == SOLQUO_TEXT) {
    char *dec = nullptr, *fact = nullptr;
    if ((st = solquo_pc_order(cover.get(), &dec, &fact)) != SOLQUO_OK) return fail(st);
    Owned<char> h1(dec), h2(fact);
    std::cout << "order " << dec << " = " << fact << "\n";
  }
  std::cout << out;
  return kOk;
}

void add_limits(CLI::App* cmd, Settings& s) {
  cmd->add_option("--threads", s.threads, "worker threads")->envname("SOLQUO_THREADS");
  cmd->add_option("--max-order", s.max_order, "group order ceiling")
      ->envname("SOLQUO_MAX_ORDER");
  cmd->add_option("--max-dim", s.max_dim, "module dimension ceiling")->envname("SOLQUO_MAX_DIM");
  cmd->add_option("--max-rows", s.max_rows, "module solver row ceiling")
      ->envname("SOLQUO_MAX_ROWS");
}

void add_format(CLI::App* cmd, Settings& s) {
  cmd->add_option("--format", s.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}))
      ->envname("SOLQUO_FORMAT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite soluble quotients of finitely presented groups"};
  app.require_subcommand(1);
  Settings s;

  auto* run = app.add_subcommand("run", "compute the quotient for an L-series");
  run->add_option("file", s.file, "finite presentation")->required();
  run->add_option("--series", s.series, "L-series, e.g. [(2,1),(3,1)]")
      ->required()
      ->envname("SOLQUO_SERIES");
  add_format(run, s);
  add_limits(run, s);
  run->add_flag("--progress", s.progress, "report each step on stderr")
      ->envname("SOLQUO_PROGRESS");

  auto* check = app.add_subcommand("check", "consistency check of a pc presentation");
  check->add_option("file", s.file, "pc presentation")->required();
  check->add_option("--threads", s.threads, "worker threads")->envname("SOLQUO_THREADS");

  auto* collect = app.add_subcommand("collect", "normal word of a word in a pc presentation");
  collect->add_option("file", s.file, "pc presentation")->required();
  collect->add_option("word", s.word, "word, e.g. \"b b a\"")->required();

  auto* cover = app.add_subcommand("cover", "covering group of a pc presentation");
  cover->add_option("file", s.file, "pc presentation")->required();
  cover->add_option("--prime", s.prime, "prime")->required();
  add_format(cover, s);
  add_limits(cover, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  if (*run) return cmd_run(s);
  if (*check) return cmd_check(s);
  if (*collect) return cmd_collect(s);
  return cmd_cover(s);
}
