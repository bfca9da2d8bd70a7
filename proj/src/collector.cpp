#include "solquo/collector.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "collect_impl.hpp"

namespace solquo {

using detail::NoHook;
using detail::StepBudget;

Collector::Collector(const PcPresentation& pc) : pc_(&pc) {
  double scale = 1;
  std::uint32_t pmax = 1;
  for (std::uint32_t p : pc.primes()) {
    scale *= p;
    pmax = std::max(pmax, p);
  }
  step_scale_ = scale * pmax;
}

std::uint64_t Collector::step_limit(std::size_t length) const {
  double limit = 16.0 * step_scale_ * static_cast<double>(length + 1);
  return limit > 9.0e18 ? UINT64_MAX : static_cast<std::uint64_t>(limit);
}

NormalWord Collector::collect(std::span<const std::size_t> word) const {
  NormalWord state = identity();
  StepBudget budget{0, step_limit(word.size())};
  NoHook hook;
  for (std::size_t g : word) {
    if (g >= pc_->size()) {
      throw Error(ErrorKind::argument, "generator index out of range");
    }
    detail::collect_generator(*pc_, state, g, budget, hook);
  }
  return state;
}

void Collector::multiply_generator(NormalWord& state, std::size_t gen) const {
  StepBudget budget{0, step_limit(1)};
  NoHook hook;
  detail::collect_generator(*pc_, state, gen, budget, hook);
}

NormalWord Collector::multiply(const NormalWord& u, const NormalWord& v) const {
  NormalWord state = u;
  std::size_t len = 0;
  for (auto e : v.exponents) len += e;
  StepBudget budget{0, step_limit(len)};
  NoHook hook;
  detail::collect_word(*pc_, state, v, budget, hook);
  return state;
}

NormalWord Collector::invert(const NormalWord& u) const {
  // Clear exponents left to right: multiplying by a_i^{p-e_i} turns the
  // leading a_i^{e_i} into the power a_i^p, which only involves later
  // generators. The multipliers form a normal word.
  const std::size_t n = pc_->size();
  NormalWord current = u;
  NormalWord inverse(n);
  StepBudget budget{0, step_limit(n * 2)};
  NoHook hook;
  for (std::size_t i = 0; i < n; ++i) {
    if (current[i] == 0) continue;
    std::uint32_t k = pc_->prime(i) - current[i];
    inverse[i] = k;
    for (std::uint32_t r = 0; r < k; ++r) {
      detail::collect_generator(*pc_, current, i, budget, hook);
    }
  }
  return inverse;
}

NormalWord Collector::power(const NormalWord& u, std::int64_t e) const {
  NormalWord base = e < 0 ? invert(u) : u;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  NormalWord result = identity();
  while (k) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return result;
}

NormalWord Collector::evaluate(const FreeWord& w,
                               std::span<const NormalWord> images) const {
  NormalWord result = identity();
  for (const Letter& l : w.letters()) {
    if (l.gen >= images.size()) {
      throw Error(ErrorKind::argument,
                  "no image for free generator " + std::to_string(l.gen + 1));
    }
    result = multiply(result, power(images[l.gen], l.exp));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Consistency

namespace {

struct TestWord {
  int family;  // 1..4
  std::size_t i, j, k;
};

std::vector<TestWord> consistency_words(std::size_t n) {
  std::vector<TestWord> out;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) out.push_back({1, i, j, k});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j) out.push_back({2, 0, j, k});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) out.push_back({3, i, j, 0});
  for (std::size_t i = 0; i < n; ++i) out.push_back({4, i, 0, 0});
  return out;
}

std::string describe(const PcPresentation& pc, const TestWord& t) {
  const auto& nm = pc.names();
  switch (t.family) {
    case 1: return nm[t.k] + " " + nm[t.j] + " " + nm[t.i];
    case 2: return nm[t.k] + "^" + std::to_string(pc.prime(t.k)) + " " + nm[t.j];
    case 3: return nm[t.j] + " " + nm[t.i] + "^" + std::to_string(pc.prime(t.i));
    default: return nm[t.i] + "^" + std::to_string(pc.prime(t.i) + 1);
  }
}

std::pair<NormalWord, NormalWord> both_bracketings(const Collector& c,
                                                   const TestWord& t) {
  const PcPresentation& pc = c.presentation();
  const std::size_t n = pc.size();
  NormalWord left(n), right(n);
  switch (t.family) {
    case 1: {  // ((a_k a_j) a_i) vs (a_k (a_j a_i))
      left = NormalWord::unit(n, t.k);
      c.multiply_generator(left, t.j);
      c.multiply_generator(left, t.i);
      NormalWord ji = NormalWord::unit(n, t.j);
      c.multiply_generator(ji, t.i);
      right = c.multiply(NormalWord::unit(n, t.k), ji);
      break;
    }
    case 2: {  // ((a_k^p) a_j) vs (a_k^{p-1} (a_k a_j))
      left = pc.power(t.k);
      c.multiply_generator(left, t.j);
      NormalWord kj = NormalWord::unit(n, t.k);
      c.multiply_generator(kj, t.j);
      NormalWord pre(n);
      pre[t.k] = pc.prime(t.k) - 1;
      right = c.multiply(pre, kj);
      break;
    }
    case 3: {  // ((a_j a_i) a_i^{p-1}) vs (a_j (a_i^p))
      left = NormalWord::unit(n, t.j);
      for (std::uint32_t r = 0; r < pc.prime(t.i); ++r) {
        c.multiply_generator(left, t.i);
      }
      right = c.multiply(NormalWord::unit(n, t.j), pc.power(t.i));
      break;
    }
    default: {  // ((a_i^p) a_i) vs (a_i (a_i^p))
      left = pc.power(t.i);
      c.multiply_generator(left, t.i);
      right = c.multiply(NormalWord::unit(n, t.i), pc.power(t.i));
      break;
    }
  }
  return {left, right};
}

}  // namespace

ConsistencyReport consistency_check(const PcPresentation& pc, unsigned threads) {
  Collector c(pc);
  std::vector<TestWord> words = consistency_words(pc.size());
  std::vector<std::optional<ConsistencyFailure>> results(words.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t w = begin; w < words.size(); w += stride) {
      auto [l, r] = both_bracketings(c, words[w]);
      if (l != r) results[w] = ConsistencyFailure{describe(pc, words[w]), l, r};
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, 64));
  if (threads == 1 || words.size() < 64) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  ConsistencyReport report;
  report.words_checked = words.size();
  for (auto& r : results) {
    if (r) report.failures.push_back(std::move(*r));
  }
  return report;
}

std::string format_consistency_report(const PcPresentation& pc,
                                      const ConsistencyReport& report) {
  std::string out;
  if (report.consistent()) {
    return "consistent (" + std::to_string(report.words_checked) +
           " test words)\n";
  }
  out = "inconsistent: " + std::to_string(report.failures.size()) + " of " +
        std::to_string(report.words_checked) + " test words fail\n";
  for (const auto& f : report.failures) {
    out += "  " + f.test_word + ": " + format_normal_word(pc, f.left) +
           " != " + format_normal_word(pc, f.right) + "\n";
  }
  return out;
}

BigInt order(const PcPresentation& pc) {
  ConsistencyReport report = consistency_check(pc);
  if (!report.consistent()) {
    throw Error(ErrorKind::inconsistent,
                "presentation is inconsistent at " + report.failures.front().test_word);
  }
  BigInt result = 1;
  for (std::uint32_t p : pc.primes()) result *= p;
  return result;
}

std::map<std::uint32_t, std::size_t> order_factorization(const PcPresentation& pc) {
  std::map<std::uint32_t, std::size_t> f;
  for (std::uint32_t p : pc.primes()) ++f[p];
  return f;
}

std::string format_factorization(const std::map<std::uint32_t, std::size_t>& f) {
  if (f.empty()) return "1";
  std::string out;
  for (auto [p, e] : f) {
    if (!out.empty()) out += " * ";
    out += std::to_string(p);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::uint64_t lex_rank(const PcPresentation& pc, const NormalWord& w,
                       std::size_t prefix) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < prefix; ++i) rank = rank * pc.prime(i) + w[i];
  return rank;
}

NormalWord lex_unrank(const PcPresentation& pc, std::uint64_t rank,
                      std::size_t prefix) {
  NormalWord w(pc.size());
  for (std::size_t i = prefix; i-- > 0;) {
    w[i] = static_cast<std::uint32_t>(rank % pc.prime(i));
    rank /= pc.prime(i);
  }
  return w;
}

std::vector<NormalWord> enumerate_elements(const PcPresentation& pc,
                                           std::uint64_t ceiling) {
  std::uint64_t total = 1;
  for (std::uint32_t p : pc.primes()) {
    if (total > ceiling / p) {
      throw Error(ErrorKind::ceiling, "group order exceeds the enumeration ceiling " +
                                          std::to_string(ceiling));
    }
    total *= p;
  }
  std::vector<NormalWord> out;
  out.reserve(total);
  for (std::uint64_t r = 0; r < total; ++r) {
    out.push_back(lex_unrank(pc, r, pc.size()));
  }
  return out;
}

PcPresentation quotient_by_tail(const PcPresentation& pc, std::size_t r) {
  if (r > pc.size()) {
    throw Error(ErrorKind::argument, "quotient_by_tail: r out of range");
  }
  std::vector<std::string> names(pc.names().begin(),
                                 pc.names().begin() + static_cast<std::ptrdiff_t>(r));
  std::vector<std::uint32_t> primes(pc.primes().begin(),
                                    pc.primes().begin() + static_cast<std::ptrdiff_t>(r));
  PcPresentation q(names, primes);
  auto truncate = [r](const NormalWord& w) {
    return NormalWord(std::vector<std::uint32_t>(
        w.exponents.begin(), w.exponents.begin() + static_cast<std::ptrdiff_t>(r)));
  };
  for (RelationId id : relations_in_display_order(r)) {
    q.rhs(id) = truncate(pc.rhs(id));
  }
  for (std::size_t i = 0; i < r; ++i) {
    q.weights()[i] = pc.weights()[i];
    q.definitions()[i] = pc.definitions()[i];
  }
  return q;
}

}  // namespace solquo
