#pragma once

// Finite-index subgroups of A = Z/d_1 + ... + Z/d_r, as lattices L with
// R = diag(d_i) Z^r <= L <= Z^r in Hermite normal form.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "manypoints/abelian.hpp"
#include "manypoints/error.hpp"

namespace manypoints {

struct Subgroup {
  std::vector<int64_t> invariants;
  /// Upper triangular, positive diagonal, 0 <= hnf[i][j] < hnf[j][j] for i < j.
  std::vector<std::vector<int64_t>> hnf;

  int rank() const { return static_cast<int>(invariants.size()); }
  /// [A : G] = [Z^r : L] = product of the diagonal.
  int64_t index() const {
    int64_t d = 1;
    for (int i = 0; i < rank(); ++i) d *= hnf[i][i];
    return d;
  }
  int64_t order() const {
    int64_t h = 1;
    for (auto d : invariants) h *= d;
    return h / index();
  }

  bool contains(std::span<const int64_t> v) const {
    if (static_cast<int>(v.size()) != rank()) throw Error(ErrorKind::InvalidInput, "coordinate dimension mismatch");
    std::vector<int64_t> w(v.begin(), v.end());
    return reduces_to_zero(w, 0);
  }

  /// Rows joined by ';', entries by ','.
  std::string to_string() const {
    std::string s;
    for (int i = 0; i < rank(); ++i) {
      if (i) s += ";";
      for (int j = 0; j < rank(); ++j) s += (j ? "," : "") + std::to_string(hnf[i][j]);
    }
    return s;
  }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend auto operator<=>(const Subgroup& a, const Subgroup& b) { return a.hnf <=> b.hnf; }

  // Back-substitution through rows from..r-1; w must vanish before `from`.
  bool reduces_to_zero(std::vector<int64_t>& w, int from) const {
    for (int i = from; i < rank(); ++i) {
      const int64_t a = hnf[i][i];
      int64_t x = w[i];
      if (x % a != 0) return false;
      const int64_t c = x / a;
      if (c != 0)
        for (int j = i; j < rank(); ++j) w[j] -= c * hnf[i][j];
    }
    return true;
  }
};

namespace detail {

inline void enumerate_hnf(Subgroup& cur, int row, int64_t remaining, std::vector<Subgroup>& out) {
  if (row < 0) {
    if (remaining == 1) out.push_back(cur);
    return;
  }
  const int r = cur.rank();
  const int64_t di = cur.invariants[row];
  for (int64_t a = 1; a <= di; ++a) {
    if (di % a != 0 || remaining % a != 0) continue;
    // rows below must absorb remaining / a
    cur.hnf[row].assign(r, 0);
    cur.hnf[row][row] = a;
    std::vector<int> cols;
    for (int j = row + 1; j < r; ++j) cols.push_back(j);
    // odometer over the entries to the right of the diagonal
    std::vector<int64_t> digit(cols.size(), 0);
    for (;;) {
      for (size_t k = 0; k < cols.size(); ++k) cur.hnf[row][cols[k]] = digit[k];
      std::vector<int64_t> w(r, 0);
      w[row] = di;
      if (cur.reduces_to_zero(w, row)) enumerate_hnf(cur, row - 1, remaining / a, out);
      size_t k = 0;
      while (k < cols.size()) {
        if (++digit[k] < cur.hnf[cols[k]][cols[k]]) break;
        digit[k] = 0;
        ++k;
      }
      if (k == cols.size()) break;
    }
  }
  cur.hnf[row].assign(r, 0);
}

}  // namespace detail

/// All subgroups of index exactly d, sorted by HNF. Empty when d does not
/// divide |A|.
inline std::vector<Subgroup> enumerate_subgroups(const std::vector<int64_t>& invariants, int64_t d) {
  std::vector<Subgroup> out;
  if (d < 1) return out;
  int64_t h = 1;
  for (auto x : invariants) h *= x;
  if (h % d != 0) return out;
  Subgroup cur;
  cur.invariants = invariants;
  cur.hnf.assign(invariants.size(), std::vector<int64_t>(invariants.size(), 0));
  detail::enumerate_hnf(cur, static_cast<int>(invariants.size()) - 1, d, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// The subgroup generated by the given coordinate vectors.
inline Subgroup subgroup_from_generators(const std::vector<int64_t>& invariants,
                                         const std::vector<std::vector<int64_t>>& gens) {
  const int r = static_cast<int>(invariants.size());
  std::vector<std::vector<int64_t>> rows;
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != r) throw Error(ErrorKind::InvalidInput, "generator dimension mismatch");
    std::vector<int64_t> v(r);
    for (int j = 0; j < r; ++j) v[j] = detail::pmod(g[j], invariants[j]);
    rows.push_back(v);
  }
  for (int j = 0; j < r; ++j) {
    std::vector<int64_t> v(r, 0);
    v[j] = invariants[j];
    rows.push_back(v);
  }
  // Euclid down each column; entries in column k may be reduced mod d_k
  // because d_k e_k lies in the lattice.
  for (int j = 0; j < r; ++j) {
    for (;;) {
      int piv = -1;
      for (int i = j; i < static_cast<int>(rows.size()); ++i)
        if (rows[i][j] != 0 && (piv < 0 || rows[i][j] < rows[piv][j])) piv = i;
      std::swap(rows[j], rows[piv]);
      bool done = true;
      for (int i = j + 1; i < static_cast<int>(rows.size()); ++i) {
        if (rows[i][j] == 0) continue;
        const int64_t q = rows[i][j] / rows[j][j];
        for (int k = j; k < r; ++k) {
          rows[i][k] -= q * rows[j][k];
          if (k > j) rows[i][k] = detail::pmod(rows[i][k], invariants[k]);
        }
        if (rows[i][j] != 0) done = false;
      }
      if (done) break;
    }
    // keep d_j e_j available for later columns
    std::vector<int64_t> v(r, 0);
    if (j + 1 < r) {
      v[j + 1] = invariants[j + 1];
      rows.push_back(v);
    }
  }
  Subgroup s;
  s.invariants = invariants;
  s.hnf.assign(rows.begin(), rows.begin() + r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < j; ++i) {
      const int64_t a = s.hnf[j][j];
      const int64_t q = (s.hnf[i][j] - detail::pmod(s.hnf[i][j], a)) / a;
      if (q != 0)
        for (int k = j; k < r; ++k) s.hnf[i][k] -= q * s.hnf[j][k];
    }
  return s;
}

/// m * A.
inline Subgroup multiple_subgroup(const std::vector<int64_t>& invariants, int64_t m) {
  std::vector<std::vector<int64_t>> gens;
  for (size_t i = 0; i < invariants.size(); ++i) {
    std::vector<int64_t> v(invariants.size(), 0);
    v[i] = m;
    gens.push_back(v);
  }
  return subgroup_from_generators(invariants, gens);
}

}  // namespace manypoints
