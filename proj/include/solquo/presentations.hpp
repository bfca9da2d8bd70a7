#pragma once

// Finitely presented groups, L-series specifications and power-conjugate
// presentations, together with their text and structured serializations.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solquo/errors.hpp"

namespace solquo {

// ---------------------------------------------------------------------------
// Free words and finite presentations

struct Letter {
  std::size_t gen = 0;
  std::int64_t exp = 0;  // nonzero

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A freely reduced word: adjacent letters have distinct generators and every
/// exponent is nonzero.
class FreeWord {
 public:
  FreeWord() = default;

  static FreeWord generator(std::size_t gen, std::int64_t exp = 1);
  /// Builds a word from arbitrary letters, reducing it freely.
  static FreeWord from_letters(const std::vector<Letter>& letters);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t length() const;  // sum of |exp|

  FreeWord inverse() const;
  FreeWord power(std::int64_t e) const;
  FreeWord& operator*=(const FreeWord& rhs);
  friend FreeWord operator*(FreeWord lhs, const FreeWord& rhs) {
    lhs *= rhs;
    return lhs;
  }

  static FreeWord commutator(const FreeWord& u, const FreeWord& v);
  /// u^v = v^-1 u v
  static FreeWord conjugate(const FreeWord& u, const FreeWord& v);

  bool is_reduced() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

 private:
  void push(Letter l);

  std::vector<Letter> letters_;
};

struct FpPresentation {
  std::vector<std::string> generators;
  std::vector<FreeWord> relators;

  std::size_t generator_count() const { return generators.size(); }
  std::optional<std::size_t> find(std::string_view name) const;
};

std::string format_free_word(const FreeWord& w,
                             const std::vector<std::string>& names);
std::string format_fp_presentation(const FpPresentation& fp);

FpPresentation parse_fp_presentation(std::string_view text);

// ---------------------------------------------------------------------------
// L-series specifications

struct LPair {
  std::uint32_t prime = 0;
  std::uint32_t cls = 0;

  friend bool operator==(const LPair&, const LPair&) = default;
};

struct LSpec {
  std::vector<LPair> pairs;

  bool empty() const { return pairs.empty(); }
  friend bool operator==(const LSpec&, const LSpec&) = default;
};

bool is_prime(std::uint64_t n);

/// Accepts `[(p,c),...]`. The final class may be zero only when
/// `allow_trailing_zero` is set (internal bookkeeping, never user input).
LSpec parse_lspec(std::string_view text);
void validate_lspec(const LSpec& spec, bool allow_trailing_zero = false);
std::string format_lspec(const LSpec& spec);

// ---------------------------------------------------------------------------
// Power-conjugate presentations

/// Exponent vector e_1..e_n of a normal word a_1^e_1 ... a_n^e_n.
struct NormalWord {
  std::vector<std::uint32_t> exponents;

  NormalWord() = default;
  explicit NormalWord(std::size_t n) : exponents(n, 0) {}
  explicit NormalWord(std::vector<std::uint32_t> e) : exponents(std::move(e)) {}

  static NormalWord identity(std::size_t n) { return NormalWord(n); }
  static NormalWord unit(std::size_t n, std::size_t gen) {
    NormalWord w(n);
    w.exponents[gen] = 1;
    return w;
  }

  std::size_t size() const { return exponents.size(); }
  std::uint32_t operator[](std::size_t i) const { return exponents[i]; }
  std::uint32_t& operator[](std::size_t i) { return exponents[i]; }
  bool is_identity() const;
  /// Index of the last nonzero exponent, if any.
  std::optional<std::size_t> last() const;

  friend bool operator==(const NormalWord&, const NormalWord&) = default;
  friend auto operator<=>(const NormalWord&, const NormalWord&) = default;
};

/// Identifies a relation: the power relation of a_i is (i, i); the conjugate
/// relation a_k^{a_j} = v_jk (j < k) is (j, k).
struct RelationId {
  std::size_t conjugator = 0;
  std::size_t target = 0;

  bool is_power() const { return conjugator == target; }
  friend bool operator==(const RelationId&, const RelationId&) = default;
  friend auto operator<=>(const RelationId&, const RelationId&) = default;
};

/// All relations of an n-generator presentation in display order: for each
/// generator a_k the conjugates a_k^{a_j} (j < k) and then the power a_k^p.
std::vector<RelationId> relations_in_display_order(std::size_t n);

struct Definition {
  enum class Kind : std::uint8_t { none, relation, image };

  Kind kind = Kind::none;
  RelationId relation{};
  std::size_t image = 0;  // fp generator whose image defines this generator

  static Definition by_relation(RelationId r) {
    return {Kind::relation, r, 0};
  }
  static Definition by_image(std::size_t g) { return {Kind::image, {}, g}; }

  friend bool operator==(const Definition&, const Definition&) = default;
};

/// Position in the exhibited series: block index (1-based, one block per
/// (prime, class) pair of the L-series) and class within that block.
struct Weight {
  std::uint32_t block = 1;
  std::uint32_t cls = 1;

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

class PcPresentation {
 public:
  PcPresentation() = default;
  /// n generators with trivial relations (a_i^p = 1, a_k^{a_j} = a_k).
  PcPresentation(std::vector<std::string> names,
                 std::vector<std::uint32_t> primes);

  std::size_t size() const { return names_.size(); }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  std::uint32_t prime(std::size_t i) const { return primes_[i]; }

  const NormalWord& power(std::size_t i) const { return power_[i]; }
  NormalWord& power(std::size_t i) { return power_[i]; }
  /// v_jk with a_k^{a_j} = v_jk, j < k.
  const NormalWord& conjugate(std::size_t j, std::size_t k) const {
    return conj_[k][j];
  }
  NormalWord& conjugate(std::size_t j, std::size_t k) { return conj_[k][j]; }
  const NormalWord& rhs(RelationId r) const {
    return r.is_power() ? power_[r.target] : conj_[r.target][r.conjugator];
  }
  NormalWord& rhs(RelationId r) {
    return r.is_power() ? power_[r.target] : conj_[r.target][r.conjugator];
  }

  std::vector<Weight>& weights() { return weights_; }
  const std::vector<Weight>& weights() const { return weights_; }
  std::vector<Definition>& definitions() { return definitions_; }
  const std::vector<Definition>& definitions() const { return definitions_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Number of generators carrying a relation definition.
  std::size_t defined_count() const;

  friend bool operator==(const PcPresentation&,
                         const PcPresentation&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::uint32_t> primes_;
  std::vector<NormalWord> power_;
  std::vector<std::vector<NormalWord>> conj_;  // conj_[k][j], j < k
  std::vector<Weight> weights_;
  std::vector<Definition> definitions_;
};

/// Structural invariants (ranges, triangularity, weights, definitions).
/// Throws Error(invalid_presentation) naming the offending relation.
void validate(const PcPresentation& pc);

std::string relation_label(const PcPresentation& pc, RelationId r);
std::string format_normal_word(const PcPresentation& pc, const NormalWord& w);
std::string format_pc_presentation(const PcPresentation& pc);
PcPresentation parse_pc_presentation(std::string_view text);

/// Parses a semigroup word over the pc generators, e.g. "b b a" or "ba^2".
std::vector<std::size_t> parse_pc_word(const PcPresentation& pc,
                                       std::string_view text);

/// Chooses definitions for a presentation lacking them: scanning relations in
/// display order, each generator takes the first unused relation whose
/// right-hand side ends in it with exponent 1 and whose left-hand side only
/// involves earlier generators. Existing relation definitions are kept.
void infer_definitions(PcPresentation& pc);

}  // namespace solquo
