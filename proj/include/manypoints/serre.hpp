#pragma once

// Serre's construction over F_2: E : y^2 + y = x^3 + x has five rational
// points P_0 = inf, P_1 = (0,0), P_2 = (1,0), P_3 = (1,1), P_4 = (0,1), and
// P_i -> i is an isomorphism E(F_2) -> Z/5. Functions with prescribed divisor
// on these points give Artin-Schreier covers w^2 + w = f with many points.

#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "manypoints/error.hpp"
#include "manypoints/linalg.hpp"
#include "manypoints/zeta.hpp"

namespace manypoints::serre {

/// Multiplicities at P_0..P_4.
using SerreDivisor = std::array<int, 5>;

inline int degree(const SerreDivisor& D) { return std::accumulate(D.begin(), D.end(), 0); }

inline std::string to_string(const SerreDivisor& D) {
  std::string s = "[";
  for (int i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(D[i]);
  return s + "]";
}

struct AffinePoint {
  int x, y;
};

/// P_1..P_4; P_0 is the point at infinity.
inline constexpr std::array<AffinePoint, 4> kAffinePoints{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};

// ---- chord-tangent law on E(F_2), written for a general Weierstrass form

namespace detail {

struct Weierstrass {
  int a1 = 0, a2 = 0, a3 = 1, a4 = 1, a6 = 0;
};
inline constexpr Weierstrass kE{};

// index 0 is infinity, 1..4 as above
inline bool on_curve(int x, int y) {
  return ((y * y + kE.a1 * x * y + kE.a3 * y) - (x * x * x + kE.a2 * x * x + kE.a4 * x + kE.a6)) % 2 == 0;
}

inline int point_index(int x, int y) {
  for (int i = 0; i < 4; ++i)
    if (kAffinePoints[i].x == x && kAffinePoints[i].y == y) return i + 1;
  throw Error(ErrorKind::Inconsistent, "point not on the curve");
}

inline int m2(int v) { return ((v % 2) + 2) % 2; }

}  // namespace detail

/// Sum of points by index, via the line through them.
inline int chord_tangent_add(int i, int j) {
  using detail::kE;
  using detail::m2;
  if (i == 0) return j;
  if (j == 0) return i;
  const auto P = kAffinePoints[i - 1], Q = kAffinePoints[j - 1];
  int lambda, nu;
  if (P.x != Q.x) {
    lambda = m2(Q.y - P.y);  // 1/(x2 - x1) = 1 over F_2
    nu = m2(P.y - lambda * P.x);
  } else {
    if (m2(P.y + Q.y + kE.a1 * Q.x + kE.a3) == 0) return 0;  // Q = -P
    const int den = m2(2 * P.y + kE.a1 * P.x + kE.a3);
    if (den == 0) return 0;
    lambda = m2(3 * P.x * P.x + 2 * kE.a2 * P.x + kE.a4 - kE.a1 * P.y);
    nu = m2(-P.x * P.x * P.x + kE.a4 * P.x + 2 * kE.a6 - kE.a3 * P.y);
  }
  const int x3 = m2(lambda * lambda + kE.a1 * lambda - kE.a2 - P.x - Q.x);
  const int y3 = m2(-(lambda + kE.a1) * x3 - nu - kE.a3);
  if (!detail::on_curve(x3, y3)) throw Error(ErrorKind::Inconsistent, "chord-tangent sum left the curve");
  return detail::point_index(x3, y3);
}

/// phi(P + Q) = phi(P) + phi(Q) mod 5 for all 25 pairs.
inline bool verify_phi_isomorphism() {
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (chord_tangent_add(i, j) != (i + j) % 5) return false;
  return true;
}

inline bool is_principal(const SerreDivisor& D) {
  int w = 0;
  for (int i = 0; i < 5; ++i) w += i * D[i];
  return degree(D) == 0 && w % 5 == 0;
}

// ---- functions (a(x) + b(x) y) / c(x), polynomials over F_2 as bit masks

using Poly2 = uint64_t;

inline int deg2(Poly2 a) { return a ? 63 - std::countl_zero(a) : -1; }

inline Poly2 mul2(Poly2 a, Poly2 b, int bits = 64) {
  Poly2 r = 0;
  for (int i = 0; i < bits && (b >> i); ++i)
    if ((b >> i) & 1) r ^= a << i;
  return bits >= 64 ? r : r & ((Poly2{1} << bits) - 1);
}

inline std::string poly2_to_string(Poly2 a, const char* var = "x") {
  if (!a) return "0";
  std::string s;
  for (int i = deg2(a); i >= 0; --i) {
    if (!((a >> i) & 1)) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) s += "1";
    else if (i == 1) s += var;
    else s += std::string(var) + "^" + std::to_string(i);
  }
  return s;
}

struct Function {
  Poly2 a = 0, b = 0, c = 1;

  std::string to_string() const {
    std::string num;
    if (a) num = poly2_to_string(a);
    if (b) num += (num.empty() ? "" : " + ") + (b == 1 ? std::string("y") : "(" + poly2_to_string(b) + ")*y");
    if (num.empty()) num = "0";
    return c == 1 ? num : "(" + num + ")/(" + poly2_to_string(c) + ")";
  }
};

namespace detail {

inline constexpr int kPrec = 48;
inline constexpr Poly2 kCubic = 0b1010;  // x^3 + x

// (x0 + t)^i as a series in t
inline Poly2 shifted_power(int x0, int i) {
  Poly2 base = x0 ? 0b11 : 0b10, r = 1;
  for (int k = 0; k < i; ++k) r = mul2(r, base, kPrec);
  return r;
}

inline Poly2 shifted(Poly2 a, int x0) {
  Poly2 r = 0;
  for (int i = 0; i <= deg2(a); ++i)
    if ((a >> i) & 1) r ^= shifted_power(x0, i);
  return r;
}

// y as a power series in t = x - x0 at (x0, y0): y = (x^3 + x) + y^2.
inline Poly2 y_series(AffinePoint P) {
  const Poly2 F = shifted(kCubic, P.x);
  Poly2 y = static_cast<Poly2>(P.y);
  for (int it = 0; it < 8; ++it) y = F ^ mul2(y, y, kPrec);
  if ((y & 1) != static_cast<Poly2>(P.y) || (F ^ mul2(y, y, kPrec)) != y)
    throw Error(ErrorKind::Inconsistent, "local expansion did not converge");
  return y;
}

// Valuation of a + b y at an affine point; kPrec means "at least kPrec".
inline int valuation(Poly2 a, Poly2 b, AffinePoint P) {
  const Poly2 s = shifted(a, P.x) ^ mul2(shifted(b, P.x), y_series(P), kPrec);
  return s ? std::countr_zero(s) : kPrec;
}

// Norm (a + b y)(a + b (y + 1)) = a^2 + a b + b^2 (x^3 + x).
inline Poly2 norm(Poly2 a, Poly2 b) { return mul2(a, a) ^ mul2(a, b) ^ mul2(mul2(b, b), kCubic); }

}  // namespace detail

/// div(f) on the five rational points, or nullopt when f has zeros or poles
/// elsewhere (checked by comparing the valuations with the degree of the norm).
inline std::optional<SerreDivisor> divisor_of(const Function& f) {
  if (!f.c || (!f.a && !f.b)) throw Error(ErrorKind::InvalidInput, "zero function");
  auto affine = [](Poly2 a, Poly2 b, std::array<int, 4>& v) {
    int total = 0;
    for (int k = 0; k < 4; ++k) total += v[k] = detail::valuation(a, b, kAffinePoints[k]);
    return total == deg2(detail::norm(a, b));
  };
  std::array<int, 4> vn{}, vc{};
  if (!affine(f.a, f.b, vn) || !affine(f.c, 0, vc)) return std::nullopt;
  SerreDivisor D{};
  // x has a pole of order 2 at infinity, y of order 3
  D[0] = deg2(detail::norm(f.c, 0)) - deg2(detail::norm(f.a, f.b));
  for (int k = 0; k < 4; ++k) D[k + 1] = vn[k] - vc[k];
  return D;
}

/// Every f with div(f) = D, up to the ambient search: f = g / (x^i (x+1)^j)
/// with g in L(n inf) cut out by vanishing conditions at P_1..P_4. Complete
/// for any D, since multiplying f by x^i (x+1)^j clears its affine poles.
inline std::vector<Function> find_functions(const SerreDivisor& D) {
  std::vector<Function> out;
  if (degree(D) != 0) return out;
  const int i = std::max({0, -D[1], -D[4]});
  const int j = std::max({0, -D[2], -D[3]});
  Poly2 c = 1;
  for (int k = 0; k < i; ++k) c = mul2(c, 0b10);
  for (int k = 0; k < j; ++k) c = mul2(c, 0b11);
  const int n = 2 * (i + j) - D[0];
  if (n < 0) return out;
  // basis of L(n inf): x^k (pole 2k), x^k y (pole 2k + 3)
  std::vector<std::pair<Poly2, Poly2>> basis;
  for (int k = 0; 2 * k <= n; ++k) basis.push_back({Poly2{1} << k, 0});
  for (int k = 0; 2 * k + 3 <= n; ++k) basis.push_back({0, Poly2{1} << k});
  const int cols = static_cast<int>(basis.size());
  MatrixFp M(2, cols);
  for (int k = 0; k < 4; ++k) {
    const AffinePoint P = kAffinePoints[k];
    const int need = D[k + 1] + detail::valuation(c, 0, P);
    std::vector<Poly2> s(cols);
    for (int col = 0; col < cols; ++col)
      s[col] = detail::shifted(basis[col].first, P.x) ^
               mul2(detail::shifted(basis[col].second, P.x), detail::y_series(P), detail::kPrec);
    for (int e = 0; e < need; ++e) {
      Row r(cols);
      for (int col = 0; col < cols; ++col) r[col] = (s[col] >> e) & 1;
      M.add_row(r);
    }
  }
  const auto null = M.nullspace();
  const int dim = static_cast<int>(null.size());
  if (dim > 20) throw Error(ErrorKind::Unsupported, "function space too large to enumerate");
  for (uint32_t mask = 1; mask < (1u << dim); ++mask) {
    Function f;
    f.c = c;
    for (int v = 0; v < dim; ++v) {
      if (!((mask >> v) & 1)) continue;
      for (int col = 0; col < cols; ++col)
        if (null[v][col]) {
          f.a ^= basis[col].first;
          f.b ^= basis[col].second;
        }
    }
    if (!f.a && !f.b) continue;
    auto d = divisor_of(f);
    if (d && *d == D) out.push_back(f);
  }
  return out;
}

inline Function find_function(const SerreDivisor& D) {
  auto fs = find_functions(D);
  if (fs.empty()) throw Error(ErrorKind::InvalidInput, "no function with divisor " + to_string(D));
  return fs.front();
}

/// Riemann-Hurwitz for w^2 + w = f in characteristic 2: each ramified place
/// with (odd) pole order m contributes m + 1.
inline int artin_schreier_genus(int base_genus, const std::vector<int>& pole_orders) {
  int twice = 2 * (2 * base_genus - 2);
  for (int m : pole_orders) {
    if (m <= 0 || m % 2 == 0) throw Error(ErrorKind::InvalidInput, "pole orders must be odd and positive");
    twice += m + 1;
  }
  return twice / 2 + 1;
}

/// Value of f at a rational point where it is regular, as 0 or 1.
inline int value_at(const Function& f, int point) {
  const SerreDivisor d = *divisor_of(f);
  if (d[point] < 0) throw Error(ErrorKind::InvalidInput, "f has a pole there");
  return d[point] > 0 ? 0 : 1;
}

inline std::vector<int> pole_orders(const SerreDivisor& D) {
  std::vector<int> out;
  for (int m : D)
    if (m < 0) out.push_back(-m);
  return out;
}

struct CoverSummary {
  int genus = 0;
  int points = 0;
};

/// w^2 + w = f: two points over each rational P with f(P) = 0, none where
/// f(P) = 1, one over each pole (odd pole orders only).
inline CoverSummary artin_schreier_cover(const Function& f) {
  const SerreDivisor D = *divisor_of(f);
  CoverSummary s;
  s.genus = artin_schreier_genus(1, pole_orders(D));
  for (int P = 0; P < 5; ++P) s.points += D[P] < 0 ? 1 : (D[P] > 0 ? 2 : 0);
  return s;
}

/// Fibre product of w^2 + w = f1 and v^2 + v = f2. Over a rational P, let U
/// be the quadratic subcovers (f1, f2, f1 + f2) unramified at P: with |U| = 3
/// P gives 4 points if all three split, with |U| = 1 it gives 2 if that one
/// splits, with |U| = 0 it gives 1. The genus is the sum over the three
/// subcovers minus twice the base genus.
inline CoverSummary fibre_product(const Function& f1, const Function& f2) {
  const Function f3{mul2(f1.a, f2.c) ^ mul2(f2.a, f1.c), mul2(f1.b, f2.c) ^ mul2(f2.b, f1.c), mul2(f1.c, f2.c)};
  const std::array<SerreDivisor, 3> divs{*divisor_of(f1), *divisor_of(f2), *divisor_of(f3)};
  const std::array<const Function*, 3> fs{&f1, &f2, &f3};
  CoverSummary s;
  s.genus = -2;
  for (const auto& d : divs) s.genus += artin_schreier_genus(1, pole_orders(d));
  for (int P = 0; P < 5; ++P) {
    int unram = 0, split = 0;
    for (int k = 0; k < 3; ++k) {
      if (divs[k][P] < 0) continue;
      ++unram;
      if (value_at(*fs[k], P) == 0) ++split;
    }
    if (unram == 3) s.points += split == 3 ? 4 : 0;
    else if (unram == 1) s.points += split == 1 ? 2 : 0;
    else if (unram == 0) s.points += 1;
    else throw Error(ErrorKind::Inconsistent, "exactly two unramified quadratic subcovers");
  }
  return s;
}

inline constexpr SerreDivisor kD1{-3, -1, 2, 1, 1};
inline constexpr SerreDivisor kD2{-1, -3, 1, 1, 2};

struct Report {
  bool phi_ok = false;
  bool d1_principal = false;
  bool d2_principal = false;
  Function f1, f2;
  CoverSummary c1, c2, fibre;
  double weil_c1 = 0, weil_fibre = 0;
};

inline Report run_demo() {
  Report r;
  r.phi_ok = verify_phi_isomorphism();
  r.d1_principal = is_principal(kD1);
  r.d2_principal = is_principal(kD2);
  r.f1 = find_function(kD1);
  r.f2 = find_function(kD2);
  r.c1 = artin_schreier_cover(r.f1);
  r.c2 = artin_schreier_cover(r.f2);
  r.fibre = fibre_product(r.f1, r.f2);
  r.weil_c1 = weil_interval(2, r.c1.genus).second;
  r.weil_fibre = weil_interval(2, r.fibre.genus).second;
  if (r.c1.points > r.weil_c1 || r.c2.points > weil_interval(2, r.c2.genus).second || r.fibre.points > r.weil_fibre)
    throw Error(ErrorKind::Validation, "cover point count exceeds the Weil bound");
  return r;
}

}  // namespace manypoints::serre
