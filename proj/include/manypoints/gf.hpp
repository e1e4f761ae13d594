#pragma once

// Exact arithmetic in F_p and F_{p^k} (k <= 6) plus univariate polynomials
// over those fields.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "manypoints/error.hpp"

namespace manypoints {

inline constexpr int kMaxExtensionDegree = 6;

/// Immutable description of F_{p^k}: elements are residues modulo `modulus`.
struct FieldDescriptor {
  uint32_t p = 0;
  int k = 0;
  /// Monic defining polynomial, low-to-high, size k + 1. For k = 1 this is T.
  std::vector<uint32_t> modulus;
  uint64_t size = 0;  // p^k
  /// Index of a fixed quadratic non-residue (odd p only), used by sqrt().
  uint64_t nonresidue_index = 0;
};

/// Descriptors are owned by a process-wide registry and never destroyed, so a
/// raw pointer is a stable identity for the field.
using Field = const FieldDescriptor*;

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline uint64_t ipow(uint64_t base, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

Field build_extension(uint32_t p, int k);
inline Field prime_field(uint32_t p) { return build_extension(p, 1); }

class FieldElement {
 public:
  FieldElement() = default;

  /// Element of the prime subfield, `value` taken mod p.
  FieldElement(Field f, int64_t value) : f_(f) {
    int64_t m = value % static_cast<int64_t>(f->p);
    if (m < 0) m += f->p;
    c_[0] = static_cast<uint32_t>(m);
  }

  static FieldElement zero(Field f) { return FieldElement(f, 0); }
  static FieldElement one(Field f) { return FieldElement(f, 1); }

  /// The class of T in F_p[T]/(modulus).
  static FieldElement generator(Field f) {
    FieldElement e(f, 0);
    if (f->k == 1)
      e.c_[0] = 0;  // T = 0 under the k = 1 convention
    else
      e.c_[1] = 1;
    return e;
  }

  static FieldElement from_coefficients(Field f, std::span<const uint32_t> coeffs) {
    FieldElement e(f, 0);
    if (static_cast<int>(coeffs.size()) > f->k)
      throw Error(ErrorKind::InvalidInput, "too many coefficients for field element");
    for (size_t i = 0; i < coeffs.size(); ++i) e.c_[i] = coeffs[i] % f->p;
    return e;
  }

  /// Base-p digits of `index` are the coefficients, c_0 least significant.
  static FieldElement from_index(Field f, uint64_t index) {
    FieldElement e(f, 0);
    for (int i = 0; i < f->k; ++i) {
      e.c_[i] = static_cast<uint32_t>(index % f->p);
      index /= f->p;
    }
    return e;
  }

  uint64_t index() const {
    uint64_t r = 0;
    for (int i = f_->k - 1; i >= 0; --i) r = r * f_->p + c_[i];
    return r;
  }

  Field field() const { return f_; }
  uint32_t coefficient(int i) const { return c_[i]; }
  std::span<const uint32_t> coefficients() const { return {c_.data(), static_cast<size_t>(f_->k)}; }

  bool is_zero() const {
    for (int i = 0; i < f_->k; ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  bool is_one() const {
    if (c_[0] != 1) return false;
    for (int i = 1; i < f_->k; ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  bool in_prime_field() const {
    for (int i = 1; i < f_->k; ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  /// Image of a prime-field element inside another field of the same characteristic.
  FieldElement embed(Field target) const {
    if (target->p != f_->p) throw Error(ErrorKind::FieldMismatch, "embedding across characteristics");
    if (!in_prime_field() && target != f_)
      throw Error(ErrorKind::FieldMismatch, "only prime-field elements can be embedded");
    return FieldElement(target, c_[0]);
  }

  FieldElement& operator+=(const FieldElement& o) {
    check(o);
    const uint32_t p = f_->p;
    for (int i = 0; i < f_->k; ++i) {
      uint32_t s = c_[i] + o.c_[i];
      c_[i] = s >= p ? s - p : s;
    }
    return *this;
  }
  FieldElement& operator-=(const FieldElement& o) {
    check(o);
    const uint32_t p = f_->p;
    for (int i = 0; i < f_->k; ++i) c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p - o.c_[i];
    return *this;
  }
  FieldElement& operator*=(const FieldElement& o) {
    check(o);
    mul_into(o);
    return *this;
  }
  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const {
    FieldElement r = *this;
    for (int i = 0; i < f_->k; ++i) r.c_[i] = c_[i] == 0 ? 0 : f_->p - c_[i];
    return r;
  }

  FieldElement pow(uint64_t n) const {
    FieldElement result = one(f_);
    FieldElement b = *this;
    while (n > 0) {
      if (n & 1) result.mul_into(b);
      b.mul_into(b);
      n >>= 1;
    }
    return result;
  }

  FieldElement inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (f_->k == 1) {
      // extended Euclid on integers
      int64_t a = c_[0], m = f_->p, x0 = 1, x1 = 0;
      while (m != 0) {
        int64_t q = a / m;
        std::tie(a, m) = std::make_pair(m, a - q * m);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
      }
      return FieldElement(f_, x0);
    }
    return pow(f_->size - 2);
  }

  /// The p-th power map.
  FieldElement frobenius() const { return pow(f_->p); }

  /// A square root if one exists (Tonelli-Shanks; odd characteristic, or
  /// characteristic 2 where every element is a square).
  bool sqrt(FieldElement& out) const;

  bool is_square() const {
    if (is_zero() || f_->p == 2) return true;
    return pow((f_->size - 1) / 2).is_one();
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.f_ == b.f_ && a.c_ == b.c_;
  }
  /// Lexicographic on coefficient vectors, c_0 first.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    for (int i = 0; i < kMaxExtensionDegree; ++i)
      if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (f_->k == 1) return std::to_string(c_[0]);
    std::string s;
    for (int i = 0; i < f_->k; ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += std::to_string(c_[i]);
        continue;
      }
      if (c_[i] != 1) s += std::to_string(c_[i]);
      s += "T";
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void check(const FieldElement& o) const {
    if (f_ != o.f_) throw Error(ErrorKind::FieldMismatch, "operands live in different fields");
  }

  void mul_into(const FieldElement& o) {
    const uint32_t p = f_->p;
    const int k = f_->k;
    if (k == 1) {
      c_[0] = static_cast<uint32_t>(static_cast<uint64_t>(c_[0]) * o.c_[0] % p);
      return;
    }
    uint64_t t[2 * kMaxExtensionDegree - 1] = {};
    for (int i = 0; i < k; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; j < k; ++j) t[i + j] += static_cast<uint64_t>(c_[i]) * o.c_[j];
    }
    const auto& m = f_->modulus;
    for (int i = 2 * k - 2; i >= k; --i) {
      uint64_t top = t[i] % p;
      if (top == 0) continue;
      for (int j = 0; j < k; ++j)
        if (m[j] != 0) t[i - k + j] += top * (p - m[j]);
    }
    for (int i = 0; i < k; ++i) c_[i] = static_cast<uint32_t>(t[i] % p);
  }

  Field f_ = nullptr;
  std::array<uint32_t, kMaxExtensionDegree> c_{};
};

inline bool FieldElement::sqrt(FieldElement& out) const {
  if (is_zero()) {
    out = *this;
    return true;
  }
  if (f_->p == 2) {
    out = pow(f_->size / 2);
    return true;
  }
  const uint64_t q = f_->size;
  if (!pow((q - 1) / 2).is_one()) return false;
  uint64_t t = q - 1;
  int s = 0;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  FieldElement z = from_index(f_, f_->nonresidue_index).pow(t);
  FieldElement x = pow((t + 1) / 2);
  FieldElement b = pow(t);
  int m = s;
  while (!b.is_one()) {
    int i = 0;
    FieldElement b2 = b;
    while (!b2.is_one()) {
      b2 *= b2;
      ++i;
    }
    FieldElement w = z;
    for (int j = 0; j < m - i - 1; ++j) w *= w;
    x *= w;
    z = w * w;
    b *= z;
    m = i;
  }
  out = x;
  return true;
}

/// Dense univariate polynomial, coefficients low-to-high, no trailing zeros.
class Poly {
 public:
  explicit Poly(Field f) : f_(f) {}
  Poly(Field f, std::vector<FieldElement> coeffs) : f_(f), c_(std::move(coeffs)) { trim(); }

  static Poly from_ints(Field f, std::initializer_list<int64_t> low_to_high) {
    std::vector<FieldElement> c;
    for (int64_t v : low_to_high) c.emplace_back(f, v);
    return Poly(f, std::move(c));
  }
  static Poly monomial(Field f, int degree, const FieldElement& coeff) {
    std::vector<FieldElement> c(degree + 1, FieldElement::zero(f));
    c[degree] = coeff;
    return Poly(f, std::move(c));
  }
  /// T - a
  static Poly linear_root(const FieldElement& a) {
    return Poly(a.field(), {-a, FieldElement::one(a.field())});
  }

  Field field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  FieldElement coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : FieldElement::zero(f_);
  }
  const std::vector<FieldElement>& coefficients() const { return c_; }
  FieldElement leading() const { return c_.empty() ? FieldElement::zero(f_) : c_.back(); }

  FieldElement evaluate(const FieldElement& x) const {
    FieldElement r = FieldElement::zero(x.field());
    for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
    return r;
  }

  Poly derivative() const {
    std::vector<FieldElement> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * FieldElement(f_, i));
    return Poly(f_, std::move(d));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    FieldElement inv = leading().inverse();
    Poly r = *this;
    for (auto& c : r.c_) c *= inv;
    return r;
  }

  /// Coefficients of a prime-field polynomial viewed inside an extension.
  Poly lift(Field target) const {
    std::vector<FieldElement> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(x.embed(target));
    return Poly(target, std::move(c));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<FieldElement> r(std::max(a.c_.size(), b.c_.size()), FieldElement::zero(a.f_));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(a.f_, std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<FieldElement> r(std::max(a.c_.size(), b.c_.size()), FieldElement::zero(a.f_));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Poly(a.f_, std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.f_);
    std::vector<FieldElement> r(a.c_.size() + b.c_.size() - 1, FieldElement::zero(a.f_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(a.f_, std::move(r));
  }
  friend Poly operator*(const Poly& a, const FieldElement& s) {
    Poly r = a;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; throws on division by the zero polynomial.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(a.f_), a};
    std::vector<FieldElement> rem = a.c_;
    std::vector<FieldElement> quo(a.degree() - b.degree() + 1, FieldElement::zero(a.f_));
    FieldElement inv = b.leading().inverse();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
      if (rem[i].is_zero()) continue;
      FieldElement q = rem[i] * inv;
      quo[i - db] = q;
      for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c_[j];
    }
    return {Poly(a.f_, std::move(quo)), Poly(a.f_, std::move(rem))};
  }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      std::string coeff = c_[i].to_string();
      if (f_->k > 1 && coeff.find('+') != std::string::npos) coeff = "(" + coeff + ")";
      if (i == 0)
        s += coeff;
      else
        s += (c_[i].is_one() ? "" : coeff + "*") + "X" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Field f_;
  std::vector<FieldElement> c_;
};

/// Monic gcd (zero if both inputs are zero).
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Poly powmod(const Poly& base, uint64_t e, const Poly& mod) {
  Poly result = Poly::from_ints(base.field(), {1}) % mod;
  Poly b = base % mod;
  while (e > 0) {
    if (e & 1) result = (result * b) % mod;
    e >>= 1;
    if (e > 0) b = (b * b) % mod;
  }
  return result;
}

/// T^(p^j) mod f by j iterated p-th powers (cheaper than one huge exponent).
inline Poly frobenius_power_of_t(const Poly& f, int j) {
  Field fld = f.field();
  Poly t = Poly::monomial(fld, 1, FieldElement::one(fld)) % f;
  for (int i = 0; i < j; ++i) t = powmod(t, fld->p, f);
  return t;
}

inline bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "zero polynomial");
  return gcd(f, f.derivative()).degree() == 0;
}

/// Fields with at most this many elements are searched exhaustively by
/// poly_roots(); larger ones use gcd with T^Q - T and equal-degree splitting.
/// Since 2^6 < 1024 the splitting path only ever sees odd characteristic.
inline constexpr uint64_t kExhaustiveRootLimit = 1024;

inline std::vector<FieldElement> poly_roots_exhaustive(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "zero polynomial has no finite root set");
  std::vector<FieldElement> roots;
  Field fld = f.field();
  for (uint64_t i = 0; i < fld->size; ++i) {
    FieldElement x = FieldElement::from_index(fld, i);
    if (f.evaluate(x).is_zero()) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace detail {

// Splits a monic product of distinct linear factors.
inline void split_linear(const Poly& g, std::vector<FieldElement>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  Field fld = g.field();
  const Poly t = Poly::monomial(fld, 1, FieldElement::one(fld));
  for (uint64_t idx = 0; idx < fld->size; ++idx) {
    FieldElement a = FieldElement::from_index(fld, idx);
    // every field above kExhaustiveRootLimit has odd characteristic (k <= 6)
    Poly probe = powmod(t + Poly(fld, {a}), (fld->size - 1) / 2, g) - Poly::from_ints(fld, {1});
    Poly h = gcd(g, probe);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, out);
      split_linear((g / h).monic(), out);
      return;
    }
  }
  throw Error(ErrorKind::Inconsistent, "equal-degree splitting failed");
}

}  // namespace detail

/// Distinct roots of f in its coefficient field, sorted.
inline std::vector<FieldElement> poly_roots(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "zero polynomial has no finite root set");
  if (f.degree() == 0) return {};
  Field fld = f.field();
  if (fld->size <= kExhaustiveRootLimit) return poly_roots_exhaustive(f);
  Poly g = f.monic();
  Poly tq = frobenius_power_of_t(g, fld->k);
  Poly split = gcd(g, tq - Poly::monomial(fld, 1, FieldElement::one(fld)));
  std::vector<FieldElement> roots;
  detail::split_linear(split, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Roots of a prime-field polynomial inside the extension `target`.
inline std::vector<FieldElement> poly_roots_in(const Poly& f, Field target) {
  return poly_roots(f.field() == target ? f : f.lift(target));
}

// -- field registry --------------------------------------------------------

namespace detail {

inline bool irreducible_over_prime_field(Field fp, const std::vector<uint32_t>& coeffs) {
  std::vector<FieldElement> c;
  for (uint32_t v : coeffs) c.emplace_back(fp, v);
  Poly f(fp, std::move(c));
  const int k = f.degree();
  if (k <= 1) return k == 1;
  const Poly t = Poly::monomial(fp, 1, FieldElement::one(fp));
  Poly tp = t;
  for (int j = 1; j <= k / 2; ++j) {
    tp = powmod(tp, fp->p, f);
    if (gcd(f, tp - t).degree() != 0) return false;
  }
  return true;
}

struct FieldRegistry {
  std::mutex mu;
  std::map<std::pair<uint32_t, int>, std::unique_ptr<FieldDescriptor>> fields;

  static FieldRegistry& instance() {
    static FieldRegistry r;
    return r;
  }
};

inline uint64_t find_nonresidue(Field f) {
  if (f->p == 2) return 0;
  for (uint64_t i = 2; i < f->size; ++i)
    if (!FieldElement::from_index(f, i).is_square()) return i;
  throw Error(ErrorKind::Inconsistent, "no quadratic non-residue found");
}

}  // namespace detail

/// F_{p^k} with the smallest monic irreducible defining polynomial, where
/// candidates T^k + c_{k-1}T^{k-1} + ... + c_0 are ordered by the integer
/// sum c_i p^i (highest coefficient most significant).
inline Field build_extension(uint32_t p, int k) {
  if (!is_prime(p) || p >= (1u << 16))
    throw Error(ErrorKind::InvalidField, "characteristic " + std::to_string(p) + " is not a supported prime");
  if (k < 1 || k > kMaxExtensionDegree)
    throw Error(ErrorKind::InvalidField, "extension degree " + std::to_string(k) + " outside [1, 6]");
  auto& reg = detail::FieldRegistry::instance();
  Field fp = nullptr;
  {
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.fields.find({p, k});
    if (it != reg.fields.end()) return it->second.get();
    auto pit = reg.fields.find({p, 1});
    if (pit == reg.fields.end()) {
      auto d = std::make_unique<FieldDescriptor>();
      d->p = p;
      d->k = 1;
      d->modulus = {0, 1};
      d->size = p;
      fp = d.get();
      reg.fields[{p, 1}] = std::move(d);
      const_cast<FieldDescriptor*>(fp)->nonresidue_index = detail::find_nonresidue(fp);
    } else {
      fp = pit->second.get();
    }
    if (k == 1) return fp;
  }
  auto d = std::make_unique<FieldDescriptor>();
  d->p = p;
  d->k = k;
  d->size = ipow(p, k);
  const uint64_t candidates = d->size;
  for (uint64_t n = 0; n < candidates; ++n) {
    std::vector<uint32_t> coeffs(k + 1);
    uint64_t m = n;
    for (int i = 0; i < k; ++i) {
      coeffs[i] = static_cast<uint32_t>(m % p);
      m /= p;
    }
    coeffs[k] = 1;
    if (detail::irreducible_over_prime_field(fp, coeffs)) {
      d->modulus = std::move(coeffs);
      break;
    }
  }
  if (d->modulus.empty()) throw Error(ErrorKind::Inconsistent, "no irreducible polynomial found");
  d->nonresidue_index = detail::find_nonresidue(d.get());
  std::lock_guard<std::mutex> lock(reg.mu);
  auto [it, inserted] = reg.fields.try_emplace({p, k}, std::move(d));
  return it->second.get();
}

}  // namespace manypoints
