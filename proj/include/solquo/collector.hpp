#pragma once

// Arithmetic in the group given by a power-conjugate presentation.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "solquo/presentations.hpp"

namespace solquo {

using BigInt = boost::multiprecision::cpp_int;

/// Collection from the left: the collected prefix is kept as an exponent
/// vector and each further generator is moved into place, with stacked
/// conjugates of the displaced suffix processed next.
class Collector {
 public:
  explicit Collector(const PcPresentation& pc);

  const PcPresentation& presentation() const { return *pc_; }

  NormalWord collect(std::span<const std::size_t> word) const;
  /// Multiplies `state` in place by a_gen.
  void multiply_generator(NormalWord& state, std::size_t gen) const;
  NormalWord multiply(const NormalWord& u, const NormalWord& v) const;
  NormalWord invert(const NormalWord& u) const;
  NormalWord power(const NormalWord& u, std::int64_t e) const;
  NormalWord identity() const { return NormalWord(pc_->size()); }

  /// Homomorphic image of a free word; images are indexed by free generator.
  NormalWord evaluate(const FreeWord& w,
                      std::span<const NormalWord> images) const;

  /// Step ceiling for collecting `length` letters.
  std::uint64_t step_limit(std::size_t length) const;

 private:
  const PcPresentation* pc_;
  double step_scale_ = 0;  // max prime times the product of relative orders
};

inline NormalWord collect(const PcPresentation& pc,
                          std::span<const std::size_t> word) {
  return Collector(pc).collect(word);
}

struct ConsistencyFailure {
  std::string test_word;
  NormalWord left;
  NormalWord right;
};

struct ConsistencyReport {
  std::vector<ConsistencyFailure> failures;
  std::size_t words_checked = 0;

  bool consistent() const { return failures.empty(); }
};

/// Runs every consistency test word (a_k a_j a_i, a_k^p a_j, a_j a_i^p,
/// a_i^{p+1}) collecting both bracketings.
ConsistencyReport consistency_check(const PcPresentation& pc,
                                    unsigned threads = 1);
std::string format_consistency_report(const PcPresentation& pc,
                                      const ConsistencyReport& report);

/// Product of the relative orders; throws Error(inconsistent) otherwise.
BigInt order(const PcPresentation& pc);
/// Prime -> multiplicity; assumes consistency.
std::map<std::uint32_t, std::size_t> order_factorization(const PcPresentation& pc);
std::string format_factorization(const std::map<std::uint32_t, std::size_t>& f);

/// Rank of a normal word in the lexicographic order of exponent vectors.
std::uint64_t lex_rank(const PcPresentation& pc, const NormalWord& w,
                       std::size_t prefix);
NormalWord lex_unrank(const PcPresentation& pc, std::uint64_t rank,
                      std::size_t prefix);

/// All normal words in lexicographic order.
std::vector<NormalWord> enumerate_elements(const PcPresentation& pc,
                                           std::uint64_t ceiling = 1000000);

/// Presentation of the quotient by the normal subgroup <a_{r+1},...,a_n>.
PcPresentation quotient_by_tail(const PcPresentation& pc, std::size_t r);

}  // namespace solquo
