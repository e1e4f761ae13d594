#pragma once

// Invariant-factor structure of a finite abelian group given by its elements
// 0..n-1 and an addition oracle.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "manypoints/error.hpp"

namespace manypoints {

struct GroupStructure {
  /// d_1 | d_2 | ... | d_r, all > 1.
  std::vector<int64_t> invariants;
  /// basis[i] has coordinate vector e_i.
  std::vector<int> basis;
  int identity = 0;

  int rank() const { return static_cast<int>(invariants.size()); }
  int64_t order() const {
    int64_t h = 1;
    for (auto d : invariants) h *= d;
    return h;
  }
  std::span<const int64_t> coordinates(int element) const {
    return {coords_.data() + static_cast<size_t>(element) * rank(), static_cast<size_t>(rank())};
  }
  std::vector<int64_t> add_coordinates(std::span<const int64_t> a, std::span<const int64_t> b) const {
    std::vector<int64_t> r(rank());
    for (int i = 0; i < rank(); ++i) r[i] = (a[i] + b[i]) % invariants[i];
    return r;
  }
  std::vector<int64_t> scale_coordinates(std::span<const int64_t> a, int64_t k) const {
    std::vector<int64_t> r(rank());
    for (int i = 0; i < rank(); ++i) r[i] = ((a[i] * (k % invariants[i])) % invariants[i] + invariants[i]) % invariants[i];
    return r;
  }

  std::vector<int64_t> coords_;  // flat, element-major
};

inline std::string invariants_to_string(const std::vector<int64_t>& inv) {
  if (inv.empty()) return "trivial";
  std::string s;
  for (auto d : inv) s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(d));
  return s;
}

namespace detail {

inline int64_t pmod(int64_t a, int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

// Smith form of the lattice rowspan(M) + h Z^s, working mod h. Returns the
// diagonal (gcd with h taken) and fills V with the column transform mod h.
inline std::vector<int64_t> smith_mod(std::vector<std::vector<int64_t>> M, int64_t h,
                                      std::vector<std::vector<int64_t>>& V) {
  const int s = static_cast<int>(M.size());
  V.assign(s, std::vector<int64_t>(s, 0));
  for (int i = 0; i < s; ++i) V[i][i] = 1 % h;
  for (auto& row : M)
    for (auto& x : row) x = pmod(x, h);
  auto col_op = [&](int dst, int src, int64_t q) {  // col_dst -= q * col_src
    for (int i = 0; i < s; ++i) {
      M[i][dst] = pmod(M[i][dst] - q % h * M[i][src] % h, h);
      V[i][dst] = pmod(V[i][dst] - q % h * V[i][src] % h, h);
    }
  };
  auto swap_cols = [&](int a, int b) {
    for (int i = 0; i < s; ++i) {
      std::swap(M[i][a], M[i][b]);
      std::swap(V[i][a], V[i][b]);
    }
  };
  for (int t = 0; t < s; ++t) {
    for (;;) {
      int bi = -1, bj = -1;
      for (int i = t; i < s; ++i)
        for (int j = t; j < s; ++j)
          if (M[i][j] != 0 && (bi < 0 || M[i][j] < M[bi][bj])) bi = i, bj = j;
      if (bi < 0) break;
      std::swap(M[t], M[bi]);
      if (bj != t) swap_cols(t, bj);
      const int64_t piv = M[t][t];
      bool clean = true;
      for (int i = t + 1; i < s; ++i) {
        if (M[i][t] == 0) continue;
        const int64_t q = M[i][t] / piv;
        for (int j = t; j < s; ++j) M[i][j] = pmod(M[i][j] - q * M[t][j] % h, h);
        if (M[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < s; ++j) {
        if (M[t][j] == 0) continue;
        col_op(j, t, M[t][j] / piv);
        if (M[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < s && bad < 0; ++i)
        for (int j = t + 1; j < s; ++j)
          if (M[i][j] % piv != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      for (int j = t; j < s; ++j) M[t][j] = pmod(M[t][j] + M[bad][j], h);
    }
  }
  std::vector<int64_t> diag(s);
  for (int t = 0; t < s; ++t) diag[t] = std::gcd(M[t][t], h);
  return diag;
}

inline std::vector<int64_t> prime_factors(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

/// Invariant factors from the sizes of the p^j-torsion subgroups, for every
/// prime p | n. Independent of group_structure's generator bookkeeping.
template <class Add>
std::vector<int64_t> torsion_invariant_factors(int n, int identity, Add&& add) {
  // per prime: multiset of exponents of the cyclic p-parts
  std::vector<std::vector<std::pair<int64_t, int>>> parts;  // (p, exponent) sorted desc
  for (int64_t p : detail::prime_factors(n)) {
    int e = 0;
    for (int64_t m = n; m % p == 0; m /= p) ++e;
    std::vector<int> exps;
    if (e == 1) {
      exps.push_back(1);
    } else {
      std::vector<int> mulp(n);
      for (int x = 0; x < n; ++x) {
        int acc = identity, base = x;
        for (int64_t m = p; m > 0; m >>= 1) {
          if (m & 1) acc = add(acc, base);
          if (m > 1) base = add(base, base);
        }
        mulp[x] = acc;
      }
      // c[j] = log_p #A[p^j]
      std::vector<int> img(n);
      for (int x = 0; x < n; ++x) img[x] = x;
      std::vector<int> c{0};
      while (true) {
        int64_t killed = 0;
        for (int x = 0; x < n; ++x) {
          img[x] = mulp[img[x]];
          if (img[x] == identity) ++killed;
        }
        int lg = 0;
        for (int64_t k = killed; k > 1; k /= p) ++lg;
        c.push_back(lg);
        if (lg == e) break;
        if (static_cast<int>(c.size()) > 64) throw Error(ErrorKind::Inconsistent, "torsion count did not stabilize");
      }
      // number of cyclic factors of order >= p^j is c[j] - c[j-1]
      const int top = static_cast<int>(c.size()) - 1;
      for (int j = top; j >= 1; --j) {
        int ge_j = c[j] - c[j - 1];
        int ge_j1 = j < top ? c[j + 1] - c[j] : 0;
        for (int k = 0; k < ge_j - ge_j1; ++k) exps.push_back(j);
      }
    }
    std::sort(exps.rbegin(), exps.rend());
    std::vector<std::pair<int64_t, int>> v;
    for (int x : exps) v.push_back({p, x});
    parts.push_back(v);
  }
  size_t r = 0;
  for (const auto& v : parts) r = std::max(r, v.size());
  std::vector<int64_t> inv(r, 1);
  // the k-th largest invariant factor collects the k-th largest p-part of every p
  for (const auto& v : parts)
    for (size_t k = 0; k < v.size(); ++k) {
      int64_t pe = 1;
      for (int i = 0; i < v[k].second; ++i) pe *= v[k].first;
      inv[r - 1 - k] *= pe;
    }
  return inv;
}

/// Invariant factors, a basis, and the coordinates of every element.
/// Built by extending a subgroup one generator at a time (about n additions)
/// and putting the relation matrix in Smith form. With `verify`, the factors
/// are cross-checked against torsion counting.
template <class Add>
GroupStructure group_structure(int n, int identity, Add&& add, bool verify = true) {
  if (n <= 0) throw Error(ErrorKind::InvalidInput, "empty group");
  std::vector<char> in_h(n, 0);
  std::vector<std::vector<int64_t>> gcoords(n);
  std::vector<int> members{identity};
  in_h[identity] = 1;
  std::vector<std::vector<int64_t>> rel;
  int s = 0;
  int next = 0;
  while (static_cast<int>(members.size()) < n) {
    while (in_h[next]) ++next;
    const int g = next;
    // smallest k with k*g in H
    int x = g;
    int64_t k = 1;
    while (!in_h[x]) {
      x = add(x, g);
      ++k;
      if (k > n) throw Error(ErrorKind::Inconsistent, "element order exceeds group size");
    }
    std::vector<int64_t> r = gcoords[x];
    for (auto& v : r) v = -v;
    r.push_back(k);
    for (auto& row : rel) row.push_back(0);
    rel.push_back(r);
    for (int m : members) gcoords[m].push_back(0);
    ++s;
    const size_t old = members.size();
    std::vector<int> layer(members.begin(), members.end());
    for (int64_t i = 1; i < k; ++i) {
      for (auto& e : layer) {
        int y = add(e, g);
        if (in_h[y]) throw Error(ErrorKind::Inconsistent, "coset extension revisited an element");
        in_h[y] = 1;
        gcoords[y] = gcoords[e];
        gcoords[y][s - 1] = i;
        e = y;
        members.push_back(y);
      }
    }
    if (members.size() != old * static_cast<size_t>(k))
      throw Error(ErrorKind::Inconsistent, "coset sizes do not multiply");
  }
  std::vector<std::vector<int64_t>> V;
  std::vector<int64_t> diag = s > 0 ? detail::smith_mod(rel, n, V) : std::vector<int64_t>{};

  GroupStructure gs;
  gs.identity = identity;
  std::vector<int> keep;
  for (int t = 0; t < s; ++t)
    if (diag[t] != 1) {
      keep.push_back(t);
      gs.invariants.push_back(diag[t]);
    }
  if (gs.order() != n) throw Error(ErrorKind::Inconsistent, "Smith form does not multiply to the group order");
  const int r = gs.rank();
  gs.coords_.assign(static_cast<size_t>(n) * r, 0);
  for (int e = 0; e < n; ++e) {
    const auto& gc = gcoords[e];
    for (int c = 0; c < r; ++c) {
      const int t = keep[c];
      const int64_t d = gs.invariants[c];
      int64_t acc = 0;
      for (int i = 0; i < s; ++i) acc = (acc + detail::pmod(gc[i], d) * (V[i][t] % d)) % d;
      gs.coords_[static_cast<size_t>(e) * r + c] = acc;
    }
  }
  gs.basis.assign(r, -1);
  for (int e = 0; e < n; ++e) {
    auto c = gs.coordinates(e);
    int ones = 0, pos = -1;
    bool unit = true;
    for (int i = 0; i < r && unit; ++i) {
      if (c[i] == 1) ++ones, pos = i;
      else if (c[i] != 0) unit = false;
    }
    if (unit && ones == 1) gs.basis[pos] = e;
  }
  for (int b : gs.basis)
    if (b < 0) throw Error(ErrorKind::Inconsistent, "coordinate map is not onto");
  if (verify) {
    auto tors = torsion_invariant_factors(n, identity, add);
    if (tors != gs.invariants)
      throw Error(ErrorKind::Inconsistent, "invariant factors disagree: Smith form gives " +
                                               invariants_to_string(gs.invariants) + ", torsion counts give " +
                                               invariants_to_string(tors));
  }
  return gs;
}

}  // namespace manypoints
