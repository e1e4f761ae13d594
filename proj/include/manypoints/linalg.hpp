#pragma once

// Dense linear algebra over a prime field F_p with p < 2^16.

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "manypoints/error.hpp"

namespace manypoints {

inline uint32_t inv_mod(uint32_t a, uint32_t p) {
  int64_t t = 0, nt = 1, r = p, nr = a % p;
  if (nr == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  while (nr != 0) {
    int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return static_cast<uint32_t>(t < 0 ? t + p : t);
}

using Row = std::vector<uint32_t>;

class MatrixFp {
 public:
  MatrixFp(uint32_t p, int cols) : p_(p), cols_(cols) {}

  uint32_t modulus() const { return p_; }
  int cols() const { return cols_; }
  int rows() const { return static_cast<int>(rows_.size()); }
  const Row& row(int i) const { return rows_[i]; }

  void add_row(Row r) {
    if (static_cast<int>(r.size()) != cols_) throw Error(ErrorKind::InvalidInput, "row length mismatch");
    rows_.push_back(std::move(r));
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows(); ++c) {
      int sel = -1;
      for (int i = r; i < rows(); ++i)
        if (rows_[i][c] != 0) {
          sel = i;
          break;
        }
      if (sel < 0) continue;
      std::swap(rows_[r], rows_[sel]);
      const uint32_t inv = inv_mod(rows_[r][c], p_);
      for (int j = c; j < cols_; ++j) rows_[r][j] = static_cast<uint32_t>(uint64_t{rows_[r][j]} * inv % p_);
      for (int i = 0; i < rows(); ++i) {
        if (i == r || rows_[i][c] == 0) continue;
        const uint64_t f = p_ - rows_[i][c];
        for (int j = c; j < cols_; ++j)
          if (rows_[r][j] != 0) rows_[i][j] = static_cast<uint32_t>((rows_[i][j] + f * rows_[r][j]) % p_);
      }
      pivots.push_back(c);
      ++r;
    }
    rows_.resize(r);
    return pivots;
  }

  /// Basis of {v : M v = 0}, one vector per free column, in increasing order
  /// of that free column. The matrix is left in reduced form.
  std::vector<Row> nullspace() {
    std::vector<int> pivots = rref();
    std::vector<char> is_pivot(cols_, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<Row> basis;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      Row v(cols_, 0);
      v[free] = 1;
      for (size_t i = 0; i < pivots.size(); ++i) {
        uint32_t a = rows_[i][free];
        v[pivots[i]] = a == 0 ? 0 : p_ - a;
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  int rank() const {
    MatrixFp copy = *this;
    return static_cast<int>(copy.rref().size());
  }

 private:
  uint32_t p_;
  int cols_;
  std::vector<Row> rows_;
};

inline uint32_t dot_mod(const uint32_t* a, const uint32_t* b, int n, uint32_t p) {
  uint64_t s = 0;
  for (int i = 0; i < n; ++i) {
    s += uint64_t{a[i]} * b[i];
    if ((i & 7) == 7) s %= p;
  }
  return static_cast<uint32_t>(s % p);
}

}  // namespace manypoints
