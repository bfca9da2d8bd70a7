#pragma once

// Group algebra F_p(Q) of a small enumerated pc group Q, free F_p(Q)-modules,
// and collection in the extension of a pc group by such a module.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solquo/collector.hpp"
#include "solquo/presentations.hpp"

namespace solquo {

/// A consistent pc group held as an enumerated set of normal words. Element
/// indices are lexicographic ranks of exponent vectors; 0 is the identity.
class FiniteGroup {
 public:
  explicit FiniteGroup(PcPresentation pc, std::uint64_t ceiling = 1000000,
                       std::size_t table_ceiling = 2048);

  const PcPresentation& presentation() const { return pc_; }
  std::uint32_t order() const { return order_; }
  std::size_t generator_count() const { return pc_.size(); }

  /// Rank of the image of `w`, reading only its first generator_count()
  /// exponents (so words of a larger presentation map to their image).
  std::uint32_t index_of(const NormalWord& w) const;
  NormalWord element(std::uint32_t x) const;

  std::uint32_t multiply_generator(std::uint32_t x, std::size_t gen) const {
    return gen_table_[gen][x];
  }
  std::uint32_t multiply(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t inverse(std::uint32_t x) const { return inverse_[x]; }

 private:
  PcPresentation pc_;
  std::uint32_t order_ = 1;
  std::vector<std::uint32_t> stride_;                 // rank weight per generator
  std::vector<std::vector<std::uint32_t>> gen_table_;  // [gen][x] = x * a_gen
  std::vector<std::uint32_t> cayley_;                 // q*q, when small enough
  std::vector<std::uint32_t> inverse_;
};

/// Element of F_p(Q) as a dense coefficient vector over Q.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(std::uint32_t p, std::uint32_t q) : p_(p), coeffs_(q, 0) {}

  static AlgebraElement unit(std::uint32_t p, std::uint32_t q,
                             std::uint32_t g = 0, std::uint32_t c = 1) {
    AlgebraElement a(p, q);
    a.coeffs_[g] = c % p;
    return a;
  }

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(coeffs_.size()); }
  std::uint32_t operator[](std::uint32_t g) const { return coeffs_[g]; }
  std::uint32_t& operator[](std::uint32_t g) { return coeffs_[g]; }
  const std::vector<std::uint32_t>& coefficients() const { return coeffs_; }
  bool is_zero() const;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> coeffs_;
};

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement negate(const AlgebraElement& a);
/// Right multiplication by the group element x: coefficient of g moves to gx.
AlgebraElement act(const FiniteGroup& q, const AlgebraElement& a, std::uint32_t x);
/// Convolution product in F_p(Q).
AlgebraElement multiply(const FiniteGroup& q, const AlgebraElement& a,
                        const AlgebraElement& b);

/// Element of the free module on `rank` generators: one algebra element per
/// generator, stored flat with coordinate (i, g) at i*q + g.
class ModuleWord {
 public:
  ModuleWord() = default;
  ModuleWord(std::uint32_t p, std::size_t rank, std::uint32_t q)
      : p_(p), rank_(rank), q_(q), coeffs_(rank * q, 0) {}

  std::uint32_t characteristic() const { return p_; }
  std::size_t rank() const { return rank_; }
  std::uint32_t group_order() const { return q_; }
  std::size_t dimension() const { return coeffs_.size(); }

  std::uint32_t at(std::size_t gen, std::uint32_t g) const { return coeffs_[gen * q_ + g]; }
  std::uint32_t& at(std::size_t gen, std::uint32_t g) { return coeffs_[gen * q_ + g]; }
  const std::vector<std::uint32_t>& coefficients() const { return coeffs_; }
  std::vector<std::uint32_t>& coefficients() { return coeffs_; }

  AlgebraElement entry(std::size_t gen) const;
  void set_entry(std::size_t gen, const AlgebraElement& a);
  bool is_zero() const;

  ModuleWord& operator+=(const ModuleWord& rhs);
  ModuleWord& operator-=(const ModuleWord& rhs);
  ModuleWord operator-() const;
  friend ModuleWord operator+(ModuleWord a, const ModuleWord& b) { return a += b; }
  friend ModuleWord operator-(ModuleWord a, const ModuleWord& b) { return a -= b; }

  friend bool operator==(const ModuleWord&, const ModuleWord&) = default;
  friend auto operator<=>(const ModuleWord&, const ModuleWord&) = default;

 private:
  std::uint32_t p_ = 2;
  std::size_t rank_ = 0;
  std::uint32_t q_ = 1;
  std::vector<std::uint32_t> coeffs_;
};

ModuleWord act(const FiniteGroup& q, const ModuleWord& m, std::uint32_t x);

/// Prints in the notation y_i^{(g + h + ...)}; generator names are supplied.
std::string format_module_word(const FiniteGroup& q, const ModuleWord& m,
                               const std::vector<std::string>& gen_names);
std::string format_algebra_element(const FiniteGroup& q, const AlgebraElement& a);

struct ExtendedNormalWord {
  NormalWord head;
  ModuleWord tail;

  friend bool operator==(const ExtendedNormalWord&, const ExtendedNormalWord&) = default;
};

/// A letter of an extended word: a base generator, or a module generator
/// raised to an algebra element.
struct ExtendedLetter {
  enum class Kind : std::uint8_t { base, module };
  Kind kind = Kind::base;
  std::size_t gen = 0;
  AlgebraElement exponent;

  static ExtendedLetter base(std::size_t g) { return {Kind::base, g, {}}; }
  static ExtendedLetter module(std::size_t i, AlgebraElement f) {
    return {Kind::module, i, std::move(f)};
  }
};

/// Collection in the extension of a pc group K by a free F_p(K/P)-module,
/// where the relations of K carry module tags. Module letters drift right,
/// acted on by the image in K/P of every base letter they pass; relations
/// of K that carry a tag append it after their right-hand side.
class ExtendedCollector {
 public:
  /// `tags[relation slot]` is the module generator appended to that relation
  /// (or none); slots are indexed by conjugator * n + target.
  ExtendedCollector(const PcPresentation& base, std::size_t head_count,
                    std::uint32_t p, std::vector<std::optional<std::size_t>> tags,
                    std::size_t module_rank,
                    std::shared_ptr<const FiniteGroup> head_group);

  const PcPresentation& base() const { return *base_; }
  const FiniteGroup& head_group() const { return *head_; }
  std::size_t head_count() const { return r_; }
  std::uint32_t prime() const { return p_; }
  std::size_t module_rank() const { return rank_; }
  std::optional<std::size_t> tag(RelationId r) const {
    return tags_[r.conjugator * base_->size() + r.target];
  }

  ModuleWord zero_tail() const { return ModuleWord(p_, rank_, head_->order()); }
  ExtendedNormalWord identity() const;
  ExtendedNormalWord generator(std::size_t g) const;

  void multiply_generator(ExtendedNormalWord& x, std::size_t g) const;
  void multiply_head(ExtendedNormalWord& x, const NormalWord& w) const;
  ExtendedNormalWord multiply(const ExtendedNormalWord& a,
                              const ExtendedNormalWord& b) const;
  ExtendedNormalWord invert(const ExtendedNormalWord& a) const;
  ExtendedNormalWord power(const ExtendedNormalWord& a, std::int64_t e) const;

  ExtendedNormalWord collect(std::span<const ExtendedLetter> word) const;

  /// Evaluates a free word with images given per free generator.
  ExtendedNormalWord evaluate(const FreeWord& w,
                              std::span<const ExtendedNormalWord> images) const;

 private:
  template <class Run>
  void run_collection(ExtendedNormalWord& x, Run&& run) const;

  const PcPresentation* base_;
  std::size_t r_;
  std::uint32_t p_;
  std::vector<std::optional<std::size_t>> tags_;
  std::size_t rank_;
  std::shared_ptr<const FiniteGroup> head_;
  Collector plain_;
};

inline ExtendedNormalWord collect_extended(const ExtendedCollector& c,
                                           std::span<const ExtendedLetter> word) {
  return c.collect(word);
}

}  // namespace solquo
