#pragma once

// Finitely presented modules over F_p(Q) for a small enumerated pc group Q:
// an F_p basis of the quotient of a free module by the submodule generated
// by given relators, with the matrix action of the generators of Q.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "solquo/group_algebra.hpp"

namespace solquo {

/// Dense matrix over F_p, row major. Vectors are rows and act on the left of
/// matrices, so x * A * B is the right action of A followed by B.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static FpMatrix identity(std::uint32_t p, std::size_t n);

  std::uint32_t characteristic() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::uint32_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::vector<std::uint32_t> row(std::size_t i) const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> data_;
};

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
std::vector<std::uint32_t> operator*(const std::vector<std::uint32_t>& x, const FpMatrix& a);
FpMatrix power(const FpMatrix& a, std::uint64_t e);
/// Throws Error(argument) when singular.
FpMatrix inverse(const FpMatrix& a);

struct BasisLabel {
  std::size_t generator = 0;   // free module generator
  std::uint32_t element = 0;   // group element index in Q
};

struct ModuleBasis {
  std::uint32_t p = 2;
  std::size_t dim = 0;
  /// One dim x dim matrix per generator of Q.
  std::vector<FpMatrix> action;
  /// Coordinates of each free generator (at the identity of Q).
  std::vector<std::vector<std::uint32_t>> gen_images;
  /// Basis vector l is the image of free generator labels[l].generator
  /// multiplied by group element labels[l].element.
  std::vector<BasisLabel> labels;
};

struct ModuleSolverLimits {
  std::size_t max_dim = 4096;
  std::uint64_t max_rows = std::uint64_t{1} << 24;
};

/// Basis of F_p(Q)^rank / <relators>. The basis is the set of non-pivot
/// columns of the reduced echelon form of the span of all translates
/// relator*g, with columns ordered (generator, element) and pivots taken at
/// the first nonzero column.
ModuleBasis module_basis(const FiniteGroup& q, std::uint32_t p, std::size_t rank,
                         const std::vector<ModuleWord>& relators,
                         const ModuleSolverLimits& limits = {});
ModuleBasis module_basis(const PcPresentation& pc_q, std::uint32_t p, std::size_t rank,
                         const std::vector<ModuleWord>& relators,
                         const ModuleSolverLimits& limits = {});

/// Matrix of the action of group element x.
FpMatrix element_matrix(const FiniteGroup& q, const ModuleBasis& basis, std::uint32_t x);

/// Coordinates of a module word in the basis.
std::vector<std::uint32_t> module_image(const FiniteGroup& q, const ModuleBasis& basis,
                                        const ModuleWord& w);

struct RepresentationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks the power and conjugate relations of Q as matrix identities.
RepresentationReport check_representation(const ModuleBasis& basis,
                                          const PcPresentation& pc_q);

std::string format_module_basis(const ModuleBasis& basis, const PcPresentation& pc_q,
                                 const std::vector<std::string>& gen_names = {});

}  // namespace solquo
