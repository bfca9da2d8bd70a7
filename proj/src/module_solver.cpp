#include "solquo/module_solver.hpp"

#include <algorithm>
#include <map>
#include <variant>

#include "echelon.hpp"
#include "solquo/errors.hpp"

namespace solquo {

using detail::inverse_mod;
using detail::SparseRow;

// ---------------------------------------------------------------------------
// Matrices

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<std::uint32_t> FpMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (a.cols() != b.rows() || a.characteristic() != b.characteristic()) {
    throw Error(ErrorKind::argument, "matrix shapes do not match");
  }
  const std::uint64_t p = a.characteristic();
  FpMatrix c(a.characteristic(), a.rows(), b.cols());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      std::uint64_t x = a(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] += x * b(k, j);
      if ((k & 1023) == 1023) {
        for (auto& v : acc) v %= p;
      }
    }
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = static_cast<std::uint32_t>(acc[j] % p);
  }
  return c;
}

std::vector<std::uint32_t> operator*(const std::vector<std::uint32_t>& x, const FpMatrix& a) {
  if (x.size() != a.rows()) throw Error(ErrorKind::argument, "vector length mismatch");
  const std::uint64_t p = a.characteristic();
  std::vector<std::uint64_t> acc(a.cols(), 0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!x[k]) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) acc[j] += std::uint64_t{x[k]} * a(k, j);
    if ((k & 1023) == 1023) {
      for (auto& v : acc) v %= p;
    }
  }
  std::vector<std::uint32_t> out(a.cols());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = static_cast<std::uint32_t>(acc[j] % p);
  return out;
}

FpMatrix power(const FpMatrix& a, std::uint64_t e) {
  FpMatrix result = FpMatrix::identity(a.characteristic(), a.rows());
  FpMatrix base = a;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

FpMatrix inverse(const FpMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::argument, "inverse of a non-square matrix");
  const std::uint64_t p = a.characteristic();
  FpMatrix m = a;
  FpMatrix inv = FpMatrix::identity(a.characteristic(), n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::argument, "matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    std::uint64_t s = inverse_mod(m(col, col), a.characteristic());
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) = static_cast<std::uint32_t>(m(col, j) * s % p);
      inv(col, j) = static_cast<std::uint32_t>(inv(col, j) * s % p);
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t f = m(i, col);
      if (i == col || f == 0) continue;
      f = p - f;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = static_cast<std::uint32_t>((m(i, j) + f * m(col, j)) % p);
        inv(i, j) = static_cast<std::uint32_t>((inv(i, j) + f * inv(col, j)) % p);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

using Sparse = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (element, coeff)

struct SparseRelator {
  std::vector<Sparse> entries;  // one per free generator

  std::size_t support() const {
    std::size_t s = 0;
    for (const auto& e : entries) s += e.size();
    return s;
  }
  bool is_zero() const { return support() == 0; }
};

struct Elimination {
  std::size_t gen;
  std::vector<Sparse> expr;  // x_gen = -sum_j x_j * expr[j]
};

class Convolver {
 public:
  Convolver(const FiniteGroup& q, std::uint32_t p)
      : q_(q), p_(p), acc_(q.order(), 0), seen_(q.order(), 0) {}

  // a - b*c
  Sparse sub_product(const Sparse& a, const Sparse& b, const Sparse& c) {
    for (auto [g, v] : a) touch(g, v);
    for (auto [g, x] : b) {
      for (auto [h, y] : c) {
        touch(q_.multiply(g, h),
              static_cast<std::uint32_t>((std::uint64_t{p_ - x} * y) % p_));
      }
    }
    return collect();
  }

  Sparse right_multiply(const Sparse& a, std::uint32_t x, std::uint32_t c) {
    for (auto [g, v] : a) {
      touch(q_.multiply(g, x), static_cast<std::uint32_t>((std::uint64_t{v} * c) % p_));
    }
    return collect();
  }

 private:
  void touch(std::uint32_t g, std::uint32_t v) {
    if (!seen_[g]) {
      seen_[g] = 1;
      touched_.push_back(g);
    }
    acc_[g] = (acc_[g] + v) % p_;
  }
  Sparse collect() {
    std::sort(touched_.begin(), touched_.end());
    Sparse out;
    for (std::uint32_t g : touched_) {
      if (acc_[g]) out.emplace_back(g, acc_[g]);
      acc_[g] = 0;
      seen_[g] = 0;
    }
    touched_.clear();
    return out;
  }

  const FiniteGroup& q_;
  std::uint32_t p_;
  std::vector<std::uint32_t> acc_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::uint32_t> touched_;
};

// Eliminates free generators that occur in some relator with a coefficient
// c*g: such a relator expresses the generator through the others. The
// cheapest relator is used first; relators too large to substitute are left
// for the dense phase.
std::vector<Elimination> eliminate_generators(const FiniteGroup& q, std::uint32_t p,
                                              std::vector<SparseRelator>& rels,
                                              std::vector<bool>& alive) {
  std::vector<Elimination> out;
  Convolver conv(q, p);
  const std::size_t limit = 4 * static_cast<std::size_t>(q.order()) + 64;
  for (;;) {
    std::erase_if(rels, [](const SparseRelator& r) { return r.is_zero(); });
    std::size_t best = rels.size(), best_gen = 0, best_cost = SIZE_MAX;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      std::size_t s = rels[r].support();
      if (s >= best_cost) continue;
      for (std::size_t i = 0; i < rels[r].entries.size(); ++i) {
        if (rels[r].entries[i].size() == 1) {
          best = r;
          best_gen = i;
          best_cost = s;
          break;
        }
      }
    }
    if (best == rels.size() || best_cost > limit) break;

    SparseRelator rho = std::move(rels[best]);
    rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(best));
    const std::size_t i = best_gen;
    auto [g, c] = rho.entries[i].front();
    const std::uint32_t ginv = q.inverse(g);
    const std::uint32_t cinv = inverse_mod(c, p);
    Elimination e{i, std::vector<Sparse>(rho.entries.size())};
    for (std::size_t j = 0; j < rho.entries.size(); ++j) {
      if (j != i && !rho.entries[j].empty()) {
        e.expr[j] = conv.right_multiply(rho.entries[j], ginv, cinv);
      }
    }
    // sigma -= rho' * sigma_i, with rho'_i = 1.
    for (auto& sigma : rels) {
      if (sigma.entries[i].empty()) continue;
      const Sparse h = std::move(sigma.entries[i]);
      sigma.entries[i].clear();
      for (std::size_t j = 0; j < sigma.entries.size(); ++j) {
        if (j == i || e.expr[j].empty()) continue;
        sigma.entries[j] = conv.sub_product(sigma.entries[j], e.expr[j], h);
      }
    }
    alive[i] = false;
    out.push_back(std::move(e));
  }
  return out;
}

template <class Echelon>
void fill_echelon(Echelon& ech, const FiniteGroup& q, const std::vector<SparseRelator>& rels,
                  const std::vector<std::size_t>& column_block) {
  SparseRow row;
  for (const auto& rho : rels) {
    for (std::uint32_t x = 0; x < q.order(); ++x) {
      if (ech.full()) return;
      row.clear();
      for (std::size_t j = 0; j < rho.entries.size(); ++j) {
        for (auto [g, c] : rho.entries[j]) {
          row.emplace_back(column_block[j] * q.order() + q.multiply(g, x), c);
        }
      }
      ech.insert(row);
    }
  }
}

// Images of every column (surviving generator, element) in the quotient,
// coordinates on the non-pivot columns.
template <class Echelon>
void surviving_images(Echelon& ech, std::uint32_t p, std::size_t ncols,
                      std::vector<std::size_t>& nonpivot,
                      std::vector<std::vector<std::uint32_t>>& column_image) {
  ech.reduce_fully();
  std::vector<std::int64_t> index(ncols, -1);
  for (std::size_t c = 0; c < ncols; ++c) {
    if (!ech.is_pivot(c)) {
      index[c] = static_cast<std::int64_t>(nonpivot.size());
      nonpivot.push_back(c);
    }
  }
  const std::size_t m = nonpivot.size();
  column_image.assign(ncols, std::vector<std::uint32_t>(m, 0));
  for (std::size_t c = 0; c < ncols; ++c) {
    auto& v = column_image[c];
    if (index[c] >= 0) {
      v[static_cast<std::size_t>(index[c])] = 1;
      continue;
    }
    for (std::size_t l = 0; l < m; ++l) {
      if (nonpivot[l] < c) continue;
      std::uint32_t e = ech.entry(c, nonpivot[l]);
      v[l] = e ? p - e : 0;
    }
  }
}

}  // namespace

ModuleBasis module_basis(const FiniteGroup& q, std::uint32_t p, std::size_t rank,
                         const std::vector<ModuleWord>& relators,
                         const ModuleSolverLimits& limits) {
  if (!is_prime(p)) throw Error(ErrorKind::argument, "module characteristic must be prime");
  const std::uint32_t n = q.order();
  for (const auto& r : relators) {
    if (r.characteristic() != p || r.rank() != rank || r.group_order() != n) {
      throw Error(ErrorKind::argument, "relator does not match the free module");
    }
  }

  std::vector<SparseRelator> rels;
  for (const auto& r : relators) {
    SparseRelator s{std::vector<Sparse>(rank)};
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::uint32_t g = 0; g < n; ++g) {
        if (std::uint32_t c = r.at(i, g) % p) s.entries[i].emplace_back(g, c);
      }
    }
    if (!s.is_zero()) rels.push_back(std::move(s));
  }

  std::vector<bool> alive(rank, true);
  std::vector<Elimination> eliminated = eliminate_generators(q, p, rels, alive);

  std::vector<std::size_t> block(rank, 0);
  std::size_t survivors = 0;
  for (std::size_t i = 0; i < rank; ++i) {
    if (alive[i]) block[i] = survivors++;
  }
  const std::size_t ncols = survivors * n;
  if (static_cast<std::uint64_t>(rels.size()) * n > limits.max_rows) {
    throw Error(ErrorKind::ceiling, "module solver would need more than " +
                                        std::to_string(limits.max_rows) + " rows");
  }

  std::vector<std::size_t> nonpivot;
  std::vector<std::vector<std::uint32_t>> column_image;
  if (p == 2) {
    detail::Gf2Echelon ech(ncols);
    fill_echelon(ech, q, rels, block);
    if (ncols - ech.rank() > limits.max_dim) {
      throw Error(ErrorKind::ceiling, "module dimension " + std::to_string(ncols - ech.rank()) +
                                          " exceeds the ceiling " + std::to_string(limits.max_dim));
    }
    surviving_images(ech, p, ncols, nonpivot, column_image);
  } else {
    detail::GfpEchelon ech(p, ncols);
    fill_echelon(ech, q, rels, block);
    if (ncols - ech.rank() > limits.max_dim) {
      throw Error(ErrorKind::ceiling, "module dimension " + std::to_string(ncols - ech.rank()) +
                                          " exceeds the ceiling " + std::to_string(limits.max_dim));
    }
    surviving_images(ech, p, ncols, nonpivot, column_image);
  }
  const std::size_t m = nonpivot.size();

  // image[i][g*m + l]: coordinates of x_i * g.
  std::vector<std::vector<std::uint32_t>> image(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    if (!alive[i]) continue;
    image[i].resize(static_cast<std::size_t>(n) * m);
    for (std::uint32_t g = 0; g < n; ++g) {
      std::copy(column_image[block[i] * n + g].begin(), column_image[block[i] * n + g].end(),
                image[i].begin() + static_cast<std::ptrdiff_t>(g * m));
    }
  }
  column_image.clear();
  std::vector<std::uint64_t> acc(m);
  for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) {
    auto& img = image[it->gen];
    img.assign(static_cast<std::size_t>(n) * m, 0);
    for (std::uint32_t g = 0; g < n; ++g) {
      std::fill(acc.begin(), acc.end(), 0);
      std::uint64_t adds = 0;
      for (std::size_t j = 0; j < rank; ++j) {
        for (auto [h, c] : it->expr[j]) {
          const std::uint32_t* src = &image[j][static_cast<std::size_t>(q.multiply(h, g)) * m];
          for (std::size_t l = 0; l < m; ++l) acc[l] += std::uint64_t{c} * src[l];
          if (++adds % 4096 == 0) {
            for (auto& v : acc) v %= p;
          }
        }
      }
      for (std::size_t l = 0; l < m; ++l) {
        std::uint32_t v = static_cast<std::uint32_t>(acc[l] % p);
        img[static_cast<std::size_t>(g) * m + l] = v ? p - v : 0;
      }
    }
  }

  // Canonical basis: a column is a non-pivot of the reduced echelon form of
  // the full relator span exactly when its image is independent of the
  // images of all later columns.
  ModuleBasis basis;
  basis.p = p;
  basis.dim = m;
  std::vector<BasisLabel> labels;
  if (m > 0) {
    detail::GfpEchelon small(p, m);
    auto column_vector = [&](std::size_t i, std::uint32_t g) {
      return std::vector<std::uint32_t>(
          image[i].begin() + static_cast<std::ptrdiff_t>(g * m),
          image[i].begin() + static_cast<std::ptrdiff_t>((g + 1) * m));
    };
    for (std::size_t i = rank; i-- > 0 && labels.size() < m;) {
      for (std::uint32_t g = n; g-- > 0 && labels.size() < m;) {
        if (small.insert_dense(column_vector(i, g))) labels.push_back({i, g});
      }
    }
    std::reverse(labels.begin(), labels.end());
    FpMatrix b(p, m, m);
    for (std::size_t l = 0; l < m; ++l) {
      auto v = column_vector(labels[l].generator, labels[l].element);
      for (std::size_t k = 0; k < m; ++k) b(l, k) = v[k];
    }
    FpMatrix binv = inverse(b);
    for (std::size_t i = 0; i < rank; ++i) {
      basis.gen_images.push_back(column_vector(i, 0) * binv);
    }
    for (std::size_t j = 0; j < q.generator_count(); ++j) {
      FpMatrix a(p, m, m);
      for (std::size_t l = 0; l < m; ++l) {
        auto v = column_vector(labels[l].generator,
                               q.multiply_generator(labels[l].element, j)) * binv;
        for (std::size_t k = 0; k < m; ++k) a(l, k) = v[k];
      }
      basis.action.push_back(std::move(a));
    }
  } else {
    basis.gen_images.assign(rank, {});
    basis.action.assign(q.generator_count(), FpMatrix(p, 0, 0));
  }
  basis.labels = std::move(labels);
  return basis;
}

ModuleBasis module_basis(const PcPresentation& pc_q, std::uint32_t p, std::size_t rank,
                         const std::vector<ModuleWord>& relators,
                         const ModuleSolverLimits& limits) {
  FiniteGroup q(pc_q);
  return module_basis(q, p, rank, relators, limits);
}

FpMatrix element_matrix(const FiniteGroup& q, const ModuleBasis& basis, std::uint32_t x) {
  FpMatrix result = FpMatrix::identity(basis.p, basis.dim);
  NormalWord w = q.element(x);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::uint32_t e = 0; e < w[i]; ++e) result = result * basis.action[i];
  }
  return result;
}

std::vector<std::uint32_t> module_image(const FiniteGroup& q, const ModuleBasis& basis,
                                        const ModuleWord& w) {
  const std::size_t m = basis.dim;
  const std::uint32_t n = q.order();
  const std::uint32_t p = basis.p;
  std::vector<std::uint64_t> acc(m, 0);
  std::vector<std::vector<std::uint32_t>> orbit(n);
  std::vector<bool> done(n);
  for (std::size_t i = 0; i < w.rank(); ++i) {
    bool any = false;
    for (std::uint32_t g = 0; g < n && !any; ++g) any = w.at(i, g) != 0;
    if (!any || m == 0) continue;
    // Breadth-first over the Cayley graph: image(x_i g a_j) = image(x_i g) A_j.
    std::fill(done.begin(), done.end(), false);
    orbit[0] = basis.gen_images[i];
    done[0] = true;
    std::vector<std::uint32_t> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t g = queue[head];
      for (std::size_t j = 0; j < q.generator_count(); ++j) {
        std::uint32_t h = q.multiply_generator(g, j);
        if (done[h]) continue;
        done[h] = true;
        orbit[h] = orbit[g] * basis.action[j];
        queue.push_back(h);
      }
    }
    for (std::uint32_t g = 0; g < n; ++g) {
      if (std::uint32_t c = w.at(i, g)) {
        for (std::size_t l = 0; l < m; ++l) acc[l] = (acc[l] + std::uint64_t{c} * orbit[g][l]) % p;
      }
    }
  }
  std::vector<std::uint32_t> out(m);
  for (std::size_t l = 0; l < m; ++l) out[l] = static_cast<std::uint32_t>(acc[l]);
  return out;
}

RepresentationReport check_representation(const ModuleBasis& basis,
                                          const PcPresentation& pc_q) {
  RepresentationReport report;
  const std::size_t r = pc_q.size();
  if (basis.action.size() != r) {
    report.failures.push_back("expected " + std::to_string(r) + " action matrices, got " +
                              std::to_string(basis.action.size()));
    return report;
  }
  for (const auto& a : basis.action) {
    if (a.rows() != basis.dim || a.cols() != basis.dim || a.characteristic() != basis.p) {
      report.failures.push_back("action matrix has the wrong shape");
      return report;
    }
  }
  auto word_matrix = [&](const NormalWord& w) {
    FpMatrix m = FpMatrix::identity(basis.p, basis.dim);
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::uint32_t e = 0; e < w[i]; ++e) m = m * basis.action[i];
    }
    return m;
  };
  for (std::size_t i = 0; i < r; ++i) {
    if (power(basis.action[i], pc_q.prime(i)) != word_matrix(pc_q.power(i))) {
      report.failures.push_back(relation_label(pc_q, {i, i}));
    }
  }
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (basis.action[k] * basis.action[j] !=
          basis.action[j] * word_matrix(pc_q.conjugate(j, k))) {
        report.failures.push_back(relation_label(pc_q, {j, k}));
      }
    }
  }
  return report;
}

std::string format_module_basis(const ModuleBasis& basis, const PcPresentation& pc_q,
                                const std::vector<std::string>& gen_names) {
  auto gen_name = [&](std::size_t i) {
    return i < gen_names.size() ? gen_names[i] : "y" + std::to_string(i + 1);
  };
  auto vec = [](const std::vector<std::uint32_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s + ")";
  };
  FiniteGroup q(pc_q);
  std::string out = "dimension " + std::to_string(basis.dim) + " over GF(" +
                    std::to_string(basis.p) + ")\nbasis:";
  for (const auto& l : basis.labels) {
    out += " " + gen_name(l.generator);
    if (l.element != 0) {
      std::string e = format_normal_word(pc_q, q.element(l.element));
      std::replace(e.begin(), e.end(), ' ', '*');
      out += "^" + e;
    }
  }
  out += "\nimages:\n";
  for (std::size_t i = 0; i < basis.gen_images.size(); ++i) {
    out += "  " + gen_name(i) + " -> " + vec(basis.gen_images[i]) + "\n";
  }
  for (std::size_t j = 0; j < basis.action.size(); ++j) {
    out += "action of " + pc_q.names()[j] + ":\n";
    for (std::size_t l = 0; l < basis.dim; ++l) {
      out += "  " + vec(basis.action[j].row(l)) + "\n";
    }
  }
  return out;
}

}  // namespace solquo
