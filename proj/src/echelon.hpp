#pragma once

// Semi-echelon row bases over F_p with pivots at the first nonzero column,
// and a final back substitution to reduced echelon form. GF(2) rows are
// packed 64 to a word; odd characteristic rows hold 16-bit residues and are
// reduced through a 32-bit accumulator that is folded lazily.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "solquo/errors.hpp"

namespace solquo::detail {

inline std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr) {
    std::int64_t q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) throw Error(ErrorKind::internal, "inverse of zero modulo p");
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

using SparseRow = std::vector<std::pair<std::size_t, std::uint32_t>>;

class Gf2Echelon {
 public:
  explicit Gf2Echelon(std::size_t ncols)
      : ncols_(ncols), words_((ncols + 63) / 64), row_of_(ncols, -1) {}

  std::size_t columns() const { return ncols_; }
  std::size_t rank() const { return pivots_.size(); }
  bool full() const { return rank() == ncols_; }

  bool insert(const SparseRow& sparse) {
    work_.assign(words_, 0);
    for (auto [c, v] : sparse) {
      if (v & 1) work_[c >> 6] ^= std::uint64_t{1} << (c & 63);
    }
    for (std::size_t w = 0; w < words_;) {
      if (!work_[w]) {
        ++w;
        continue;
      }
      std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(work_[w]));
      std::int64_t r = row_of_[c];
      if (r < 0) {
        row_of_[c] = static_cast<std::int64_t>(pivots_.size());
        pivots_.push_back(c);
        rows_.insert(rows_.end(), work_.begin(), work_.end());
        return true;
      }
      const std::uint64_t* src = &rows_[static_cast<std::size_t>(r) * words_];
      for (std::size_t k = w; k < words_; ++k) work_[k] ^= src[k];
    }
    return false;
  }

  void reduce_fully() {
    std::vector<std::size_t> order(pivots_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivots_[a] > pivots_[b]; });
    for (std::size_t r : order) {
      std::uint64_t* row = &rows_[r * words_];
      const std::size_t own = pivots_[r];
      for (std::size_t w = own >> 6; w < words_; ++w) {
        std::uint64_t bits = row[w];
        if (w == own >> 6) bits &= ~((std::uint64_t{2} << (own & 63)) - 1);
        while (bits) {
          std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          std::int64_t other = row_of_[c];
          if (other < 0) continue;
          const std::uint64_t* src = &rows_[static_cast<std::size_t>(other) * words_];
          for (std::size_t k = w; k < words_; ++k) row[k] ^= src[k];
          bits = row[w] & ~((std::uint64_t{2} << (c & 63)) - 1);
        }
      }
    }
  }

  bool is_pivot(std::size_t c) const { return row_of_[c] >= 0; }
  std::uint32_t entry(std::size_t pivot_col, std::size_t c) const {
    const std::uint64_t* row = &rows_[static_cast<std::size_t>(row_of_[pivot_col]) * words_];
    return (row[c >> 6] >> (c & 63)) & 1;
  }

 private:
  std::size_t ncols_, words_;
  std::vector<std::int64_t> row_of_;
  std::vector<std::size_t> pivots_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> work_;
};

class GfpEchelon {
 public:
  GfpEchelon(std::uint32_t p, std::size_t ncols) : p_(p), ncols_(ncols), row_of_(ncols, -1) {
    if (p >= 65536) throw Error(ErrorKind::argument, "prime too large for the module solver");
    std::uint64_t sq = std::uint64_t{p - 1} * (p - 1);
    fold_every_ = sq == 0 ? 1 : std::max<std::uint64_t>(1, (0xffffffffull - p) / sq);
  }

  std::size_t columns() const { return ncols_; }
  std::size_t rank() const { return pivots_.size(); }
  bool full() const { return rank() == ncols_; }

  bool insert(const SparseRow& sparse) {
    work_.assign(ncols_, 0);
    for (auto [c, v] : sparse) work_[c] = (work_[c] + v) % p_;
    return insert_work();
  }

  bool insert_dense(const std::vector<std::uint32_t>& dense) {
    work_.assign(dense.begin(), dense.end());
    for (auto& x : work_) x %= p_;
    return insert_work();
  }

  void reduce_fully() {
    std::vector<std::size_t> order(pivots_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivots_[a] > pivots_[b]; });
    for (std::size_t r : order) {
      std::uint16_t* row = &rows_[r * ncols_];
      const std::size_t own = pivots_[r];
      work_.assign(row, row + ncols_);
      std::uint64_t adds = 0;
      std::size_t end = ends_[r];
      for (std::size_t c = own + 1; c < end; ++c) {
        std::uint32_t x = work_[c] % p_;
        std::int64_t other = row_of_[c];
        if (x == 0 || other < 0) continue;
        axpy(p_ - x, static_cast<std::size_t>(other), c, adds);
        end = std::max(end, ends_[static_cast<std::size_t>(other)]);
      }
      for (std::size_t c = own; c < ncols_; ++c) row[c] = static_cast<std::uint16_t>(work_[c] % p_);
      ends_[r] = end;
    }
  }

  bool is_pivot(std::size_t c) const { return row_of_[c] >= 0; }
  std::uint32_t entry(std::size_t pivot_col, std::size_t c) const {
    return rows_[static_cast<std::size_t>(row_of_[pivot_col]) * ncols_ + c];
  }

 private:
  void axpy(std::uint32_t f, std::size_t r, std::size_t from, std::uint64_t& adds) {
    const std::uint16_t* src = &rows_[r * ncols_];
    const std::size_t end = ends_[r];
    std::uint32_t* dst = work_.data();
    for (std::size_t k = from; k < end; ++k) dst[k] += f * src[k];
    if (++adds % fold_every_ == 0) {
      for (std::size_t k = from; k < ncols_; ++k) dst[k] %= p_;
    }
  }

  bool insert_work() {
    std::uint64_t adds = 0;
    for (std::size_t c = 0; c < ncols_; ++c) {
      std::uint32_t x = work_[c] % p_;
      if (x == 0) continue;
      std::int64_t r = row_of_[c];
      if (r >= 0) {
        axpy(p_ - x, static_cast<std::size_t>(r), c, adds);
        continue;
      }
      const std::uint32_t inv = inverse_mod(x, p_);
      std::size_t end = c + 1;
      std::size_t base = rows_.size();
      rows_.resize(base + ncols_, 0);
      for (std::size_t k = c; k < ncols_; ++k) {
        std::uint32_t v = static_cast<std::uint32_t>(
            (std::uint64_t{work_[k] % p_} * inv) % p_);
        rows_[base + k] = static_cast<std::uint16_t>(v);
        if (v) end = k + 1;
      }
      row_of_[c] = static_cast<std::int64_t>(pivots_.size());
      pivots_.push_back(c);
      ends_.push_back(end);
      return true;
    }
    return false;
  }

  std::uint32_t p_;
  std::size_t ncols_;
  std::uint64_t fold_every_ = 1;
  std::vector<std::int64_t> row_of_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> ends_;
  std::vector<std::uint16_t> rows_;
  std::vector<std::uint32_t> work_;
};

}  // namespace solquo::detail
