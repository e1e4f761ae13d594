#pragma once

// L-polynomial of a curve from its point counts, the class number, and the
// Weil and Ihara upper bounds.

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "manypoints/error.hpp"

namespace manypoints {

struct LPolynomial {
  int genus = 0;
  int64_t q = 0;
  /// a_0 .. a_{2g}, a_0 = 1.
  std::vector<int64_t> coeffs{1};

  int64_t evaluate(int64_t t) const {
    int64_t r = 0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) r = r * t + coeffs[i];
    return r;
  }

  bool satisfies_functional_equation() const {
    const int g = genus;
    int64_t qp = 1;
    for (int i = g; i >= 0; --i) {
      // qp = q^(g - i)
      if (coeffs[2 * g - i] != qp * coeffs[i]) return false;
      qp *= q;
    }
    return true;
  }

  /// Distinct reciprocal roots (roots of T^{2g} P(1/T)). Repeated factors are
  /// removed exactly first, so Durand-Kerner only ever sees simple roots.
  std::vector<std::complex<long double>> reciprocal_roots() const {
    using C = std::complex<long double>;
    using Z = boost::multiprecision::cpp_int;
    using ZPoly = std::vector<Z>;  // low-to-high
    auto trim = [](ZPoly& a) {
      while (!a.empty() && a.back() == 0) a.pop_back();
    };
    auto primitive = [&](ZPoly a) {
      trim(a);
      Z c = 0;
      for (const auto& x : a) c = gcd(c, abs(x));
      if (c > 1)
        for (auto& x : a) x /= c;
      if (!a.empty() && a.back() < 0)
        for (auto& x : a) x = -x;
      return a;
    };
    // pseudo-remainder of a by b
    auto prem = [&](ZPoly a, const ZPoly& b) {
      const size_t db = b.size() - 1;
      while (a.size() >= b.size()) {
        Z lead = a.back();
        const size_t shift = a.size() - b.size();
        for (auto& x : a) x *= b.back();
        for (size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
        trim(a);
      }
      return a;
    };
    // exact quotient a / b (b divides a)
    auto divide = [&](ZPoly a, const ZPoly& b) {
      ZPoly q(a.size() - b.size() + 1, 0);
      while (a.size() >= b.size()) {
        const size_t shift = a.size() - b.size();
        Z c = a.back() / b.back();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
      }
      return q;
    };

    const int n = 2 * genus;
    if (n == 0) return {};
    ZPoly R(n + 1);
    for (int k = 0; k <= n; ++k) R[n - k] = coeffs[k];
    ZPoly dR;
    for (int i = 1; i <= n; ++i) dR.push_back(R[i] * i);
    ZPoly a = primitive(R), b = primitive(dR);
    while (!b.empty()) {
      ZPoly r = primitive(prem(a, b));
      a = std::move(b);
      b = std::move(r);
    }
    ZPoly sq = primitive(divide(primitive(R), a));
    const int m = static_cast<int>(sq.size()) - 1;
    std::vector<long double> c(m + 1);
    for (int i = 0; i <= m; ++i) c[i] = static_cast<long double>(sq[i]) / static_cast<long double>(sq[m]);

    std::vector<C> roots(m);
    const C seed(0.4L, 0.9L);
    C w = 1;
    for (int i = 0; i < m; ++i, w *= seed) roots[i] = w * std::sqrt(static_cast<long double>(q));
    auto eval = [&](C z) {
      C r = 0;
      for (int i = m; i >= 0; --i) r = r * z + c[i];
      return r;
    };
    for (int it = 0; it < 5000; ++it) {
      long double delta = 0;
      for (int i = 0; i < m; ++i) {
        C den = 1;
        for (int j = 0; j < m; ++j)
          if (j != i) den *= roots[i] - roots[j];
        C step = eval(roots[i]) / den;
        roots[i] -= step;
        delta = std::max(delta, std::abs(step));
      }
      if (delta < 1e-17L) break;
    }
    return roots;
  }

  /// Largest deviation of |alpha| from sqrt(q) over the reciprocal roots.
  double root_modulus_error() const {
    double worst = 0;
    const double s = std::sqrt(static_cast<double>(q));
    for (const auto& r : reciprocal_roots()) worst = std::max(worst, std::abs(static_cast<double>(std::abs(r)) - s));
    return worst;
  }
};

/// P(T) from N_1..N_g. With S_j = q^j + 1 - N_j (the power sums of the
/// reciprocal roots), Newton's identities read k a_k = -sum_{i=1..k} a_{k-i} S_i.
/// Genus 1 check: a_1 = -S_1 = N_1 - q - 1.
inline LPolynomial l_polynomial(const std::vector<int64_t>& counts, int g, int64_t q) {
  if (static_cast<int>(counts.size()) < g)
    throw Error(ErrorKind::InvalidInput, "need N_1..N_g to determine the L-polynomial");
  LPolynomial L;
  L.genus = g;
  L.q = q;
  L.coeffs.assign(2 * g + 1, 0);
  L.coeffs[0] = 1;
  std::vector<int64_t> S(g + 1, 0);
  int64_t qj = 1;
  for (int j = 1; j <= g; ++j) {
    qj *= q;
    S[j] = qj + 1 - counts[j - 1];
    if (std::abs(static_cast<double>(S[j])) > 2.0 * g * std::pow(static_cast<double>(q), j / 2.0) + 1e-9)
      throw Error(ErrorKind::Inconsistent, "inconsistent counts: N_" + std::to_string(j) + " = " +
                                               std::to_string(counts[j - 1]) + " violates the Weil bound");
  }
  for (int k = 1; k <= g; ++k) {
    int64_t acc = 0;
    for (int i = 1; i <= k; ++i) acc += L.coeffs[k - i] * S[i];
    if (acc % k != 0) throw Error(ErrorKind::Inconsistent, "inconsistent counts: non-integral L-polynomial");
    L.coeffs[k] = -acc / k;
  }
  int64_t qp = q;
  for (int i = g - 1; i >= 0; --i, qp *= q) L.coeffs[2 * g - i] = qp * L.coeffs[i];
  if (L.evaluate(1) <= 0) throw Error(ErrorKind::Inconsistent, "inconsistent counts: P(1) <= 0");
  return L;
}

inline int64_t class_number(const LPolynomial& L) { return L.evaluate(1); }

/// N_{q^n} predicted by P, for n >= 1.
inline int64_t predicted_count(const LPolynomial& L, int n) {
  // power sums from Newton's identities run forward
  const int d = 2 * L.genus;
  std::vector<int64_t> S(n + 1, 0);
  for (int k = 1; k <= n; ++k) {
    int64_t acc = k <= d ? k * L.coeffs[k] : 0;
    for (int i = 1; i < k; ++i)
      if (k - i <= d) acc += L.coeffs[k - i] * S[i];
    S[k] = -acc;
  }
  int64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= L.q;
  return qn + 1 - S[n];
}

inline std::pair<double, double> weil_interval(double q, int g) {
  const double w = 2.0 * g * std::sqrt(q);
  return {q + 1 - w, q + 1 + w};
}

inline double ihara_bound(double q, int g) {
  return q + 1 + 0.5 * (std::sqrt((8 * q + 1) * g * g + 4.0 * g * (q * q - q)) - g);
}

}  // namespace manypoints
