#pragma once

// Genus-3 curve models over a prime field: smooth plane quartics and
// hyperelliptic models y^2 = f(x) with deg f in {7, 8}.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "manypoints/error.hpp"
#include "manypoints/gf.hpp"

namespace manypoints {

/// Exponents (a, b, c) of x^a y^b z^c, a + b + c = 4, descending lexicographic.
inline const std::array<std::array<int, 3>, 15>& quartic_monomials() {
  static const auto table = [] {
    std::array<std::array<int, 3>, 15> t{};
    int i = 0;
    for (int a = 4; a >= 0; --a)
      for (int b = 4 - a; b >= 0; --b) t[i++] = {a, b, 4 - a - b};
    return t;
  }();
  return table;
}

struct PlaneQuartic {
  uint32_t p = 0;
  std::array<uint32_t, 15> coeffs{};
};

struct HyperellipticModel {
  uint32_t p = 0;
  /// a_0 .. a_d, d in {7, 8}, a_d != 0.
  std::vector<uint32_t> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

enum class ModelKind { Quartic, Hyperelliptic };

struct CurveId {
  ModelKind kind;
  uint32_t p;
  std::vector<uint32_t> coeffs;

  std::string to_string() const {
    std::string s = kind == ModelKind::Quartic ? "quartic:" : "hyper:";
    s += std::to_string(p) + ":";
    for (size_t i = 0; i < coeffs.size(); ++i) s += (i ? "," : "") + std::to_string(coeffs[i]);
    return s;
  }
  /// The curve-list line this id was parsed from (up to reduction mod p).
  std::string to_line() const {
    std::string s = kind == ModelKind::Quartic ? "quartic " : "hyper ";
    s += std::to_string(p) + " ";
    for (size_t i = 0; i < coeffs.size(); ++i) s += (i ? "," : "") + std::to_string(coeffs[i]);
    return s;
  }
  friend auto operator<=>(const CurveId&, const CurveId&) = default;
};

/// Projective point with the last nonzero coordinate equal to 1. Hyperelliptic
/// points use weighted coordinates: (x:y:1) affine, (1:v:0) above x = infinity
/// with v = y / x^4.
struct Point {
  std::array<FieldElement, 3> c;

  Field field() const { return c[0].field(); }
  Point frobenius() const { return {{c[0].frobenius(), c[1].frobenius(), c[2].frobenius()}}; }
  bool in_prime_field() const {
    return c[0].in_prime_field() && c[1].in_prime_field() && c[2].in_prime_field();
  }
  std::string to_string() const {
    return "(" + c[0].to_string() + ":" + c[1].to_string() + ":" + c[2].to_string() + ")";
  }
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point& a, const Point& b) {
    for (int i = 0; i < 3; ++i)
      if (auto o = a.c[i] <=> b.c[i]; o != 0) return o;
    return std::strong_ordering::equal;
  }
};

/// Closed point: a Frobenius orbit of size `degree`, stored by its minimal member.
struct Place {
  int degree = 1;
  Point rep;
  friend bool operator==(const Place&, const Place&) = default;
  friend auto operator<=>(const Place& a, const Place& b) {
    if (a.degree != b.degree) return a.degree <=> b.degree;
    return a.rep <=> b.rep;
  }
};

/// Affine chart around a point: the curve is G(a, b) = 0 in chart coordinates.
struct Chart {
  enum Kind { QuarticZ, QuarticY, QuarticX, HyperFinite, HyperInfinite };
  Kind kind;
  FieldElement a0, b0;
  struct Term {
    int i, j;
    uint32_t coeff;
  };
  std::vector<Term> terms;
};

struct SmoothnessReport {
  bool smooth = true;
  std::optional<Point> witness;
};

class Curve {
 public:
  explicit Curve(PlaneQuartic q) : model_(std::move(q)) { init(); }
  explicit Curve(HyperellipticModel h) : model_(std::move(h)) { init(); }

  ModelKind kind() const {
    return std::holds_alternative<PlaneQuartic>(model_) ? ModelKind::Quartic : ModelKind::Hyperelliptic;
  }
  const PlaneQuartic& quartic() const { return std::get<PlaneQuartic>(model_); }
  const HyperellipticModel& hyperelliptic() const { return std::get<HyperellipticModel>(model_); }
  uint32_t p() const { return field_->p; }
  Field field() const { return field_; }
  int genus() const { return 3; }

  CurveId id() const {
    if (kind() == ModelKind::Quartic) {
      const auto& c = quartic().coeffs;
      return {ModelKind::Quartic, p(), std::vector<uint32_t>(c.begin(), c.end())};
    }
    return {ModelKind::Hyperelliptic, p(), hyperelliptic().coeffs};
  }

  /// Defining equation evaluated at a point (x, y, z) of any extension.
  FieldElement evaluate(const Point& pt) const {
    Field f = pt.field();
    FieldElement r = FieldElement::zero(f);
    if (kind() == ModelKind::Quartic) {
      const auto& mons = quartic_monomials();
      for (int i = 0; i < 15; ++i) {
        if (quartic().coeffs[i] == 0) continue;
        r += FieldElement(f, quartic().coeffs[i]) * pt.c[0].pow(mons[i][0]) * pt.c[1].pow(mons[i][1]) *
             pt.c[2].pow(mons[i][2]);
      }
      return r;
    }
    const auto& a = hyperelliptic().coeffs;
    if (!pt.c[2].is_zero()) {
      // y^2 - f(x) with z = 1
      for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) r = r * pt.c[0] + FieldElement(f, a[i]);
      return pt.c[1] * pt.c[1] - r;
    }
    // v^2 - (u^8 f(1/u)) at u = 0 is v^2 - a_8
    FieldElement lead = a.size() == 9 ? FieldElement(f, a[8]) : FieldElement::zero(f);
    return pt.c[1] * pt.c[1] - lead;
  }

  bool contains(const Point& pt) const { return evaluate(pt).is_zero(); }

  /// All points over F_{p^j}, sorted.
  std::vector<Point> points(int j) const {
    Field fq = build_extension(p(), j);
    std::vector<Point> out;
    if (kind() == ModelKind::Quartic)
      quartic_points(fq, out);
    else
      hyper_points(fq, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  Chart chart(const Point& pt) const;

  SmoothnessReport validate_smooth() const;

 private:
  void init() {
    uint32_t p = std::visit([](const auto& m) { return m.p; }, model_);
    field_ = prime_field(p);
    if (kind() == ModelKind::Quartic) {
      bool any = false;
      for (auto& c : std::get<PlaneQuartic>(model_).coeffs) {
        c %= p;
        any = any || c != 0;
      }
      if (!any) throw Error(ErrorKind::InvalidInput, "zero polynomial");
    } else {
      auto& h = std::get<HyperellipticModel>(model_);
      if (p == 2)
        throw Error(ErrorKind::Unsupported, "hyperelliptic model y^2 = f(x) is singular in characteristic 2");
      for (auto& c : h.coeffs) c %= p;
      if (h.degree() != 7 && h.degree() != 8)
        throw Error(ErrorKind::InvalidInput, "hyperelliptic f must have 8 or 9 coefficients (degree 7 or 8)");
      if (h.coeffs.back() == 0) throw Error(ErrorKind::InvalidInput, "leading coefficient of f vanishes mod p");
    }
  }

  Poly hyper_f(Field fq) const {
    std::vector<FieldElement> c;
    for (uint32_t v : hyperelliptic().coeffs) c.emplace_back(fq, v);
    return Poly(fq, std::move(c));
  }

  void quartic_points(Field fq, std::vector<Point>& out) const {
    const auto& mons = quartic_monomials();
    const auto& a = quartic().coeffs;
    const FieldElement zero = FieldElement::zero(fq), one = FieldElement::one(fq);
    // affine fibres x = const, z = 1
    for (uint64_t ix = 0; ix < fq->size; ++ix) {
      FieldElement x = FieldElement::from_index(fq, ix);
      std::array<FieldElement, 5> xp;
      xp[0] = one;
      for (int i = 1; i <= 4; ++i) xp[i] = xp[i - 1] * x;
      std::vector<FieldElement> cy(5, zero);
      for (int i = 0; i < 15; ++i)
        if (a[i] != 0) cy[mons[i][1]] += FieldElement(fq, a[i]) * xp[mons[i][0]];
      Poly g(fq, cy);
      if (g.is_zero()) throw Error(ErrorKind::Singular, "quartic contains a vertical line");
      for (const auto& y : poly_roots(g)) out.push_back({{x, y, one}});
    }
    // z = 0, y = 1
    std::vector<FieldElement> cx(5, zero);
    for (int i = 0; i < 15; ++i)
      if (mons[i][2] == 0 && a[i] != 0) cx[mons[i][0]] += FieldElement(fq, a[i]);
    Poly g(fq, cx);
    if (g.is_zero()) throw Error(ErrorKind::Singular, "quartic contains the line z = 0");
    for (const auto& x : poly_roots(g)) out.push_back({{x, one, zero}});
    if (a[0] == 0) out.push_back({{one, zero, zero}});
  }

  void hyper_points(Field fq, std::vector<Point>& out) const {
    const FieldElement zero = FieldElement::zero(fq), one = FieldElement::one(fq);
    Poly f = hyper_f(fq);
    for (uint64_t ix = 0; ix < fq->size; ++ix) {
      FieldElement x = FieldElement::from_index(fq, ix);
      FieldElement v = f.evaluate(x);
      FieldElement y;
      if (v.is_zero()) {
        out.push_back({{x, zero, one}});
      } else if (v.sqrt(y)) {
        out.push_back({{x, y, one}});
        out.push_back({{x, -y, one}});
      }
    }
    const auto& a = hyperelliptic().coeffs;
    if (a.size() == 8) {
      out.push_back({{one, zero, zero}});
    } else {
      FieldElement s;
      if (FieldElement(fq, a[8]).sqrt(s)) {
        out.push_back({{one, s, zero}});
        out.push_back({{one, -s, zero}});
      }
    }
  }

  SmoothnessReport quartic_smoothness() const;

  std::variant<PlaneQuartic, HyperellipticModel> model_;
  Field field_ = nullptr;
};

inline Chart Curve::chart(const Point& pt) const {
  Chart ch;
  const uint32_t p = this->p();
  if (kind() == ModelKind::Quartic) {
    const auto& mons = quartic_monomials();
    int ia, ib;
    if (!pt.c[2].is_zero()) {
      ch.kind = Chart::QuarticZ;
      ia = 0, ib = 1;
    } else if (!pt.c[1].is_zero()) {
      ch.kind = Chart::QuarticY;
      ia = 0, ib = 2;
    } else {
      ch.kind = Chart::QuarticX;
      ia = 1, ib = 2;
    }
    ch.a0 = pt.c[ia];
    ch.b0 = pt.c[ib];
    for (int i = 0; i < 15; ++i)
      if (quartic().coeffs[i] != 0) ch.terms.push_back({mons[i][ia], mons[i][ib], quartic().coeffs[i]});
    return ch;
  }
  const auto& a = hyperelliptic().coeffs;
  // b^2 - phi(a)
  ch.terms.push_back({0, 2, 1});
  if (!pt.c[2].is_zero()) {
    ch.kind = Chart::HyperFinite;
    ch.a0 = pt.c[0];
    ch.b0 = pt.c[1];
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0) ch.terms.push_back({static_cast<int>(i), 0, p - a[i]});
  } else {
    ch.kind = Chart::HyperInfinite;
    ch.a0 = FieldElement::zero(pt.field());
    ch.b0 = pt.c[1];
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0) ch.terms.push_back({8 - static_cast<int>(i), 0, p - a[i]});
  }
  return ch;
}

// -- smoothness -------------------------------------------------------------

namespace detail {

using Hom = std::vector<std::pair<std::array<int, 3>, uint32_t>>;

inline Hom hom_derivative(const Hom& f, int var, uint32_t p) {
  Hom d;
  for (const auto& [e, c] : f) {
    if (e[var] == 0) continue;
    uint32_t v = static_cast<uint32_t>(uint64_t{c} * (e[var] % p) % p);
    if (v == 0) continue;
    auto e2 = e;
    --e2[var];
    d.push_back({e2, v});
  }
  return d;
}

inline FieldElement hom_eval(const Hom& f, const FieldElement& x, const FieldElement& y, const FieldElement& z) {
  Field fld = x.field();
  FieldElement r = FieldElement::zero(fld);
  for (const auto& [e, c] : f) r += FieldElement(fld, c) * x.pow(e[0]) * y.pow(e[1]) * z.pow(e[2]);
  return r;
}

// Polynomial in y with coefficients in F_p[x], from f(x, y, 1).
inline std::vector<Poly> hom_affine(const Hom& f, Field fp) {
  std::vector<Poly> by(5, Poly(fp));
  for (const auto& [e, c] : f)
    by[e[1]] = by[e[1]] + Poly::monomial(fp, e[0], FieldElement(fp, c));
  while (!by.empty() && by.back().is_zero()) by.pop_back();
  return by;
}

// Determinant of a square matrix over F_p[x] by fraction-free elimination.
inline Poly det_bareiss(std::vector<std::vector<Poly>> m, Field fp) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return Poly::from_ints(fp, {1});
  Poly prev = Poly::from_ints(fp, {1});
  bool negate = false;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int sel = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) {
          sel = i;
          break;
        }
      if (sel < 0) return Poly(fp);
      std::swap(m[k], m[sel]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  Poly d = m[n - 1][n - 1];
  return negate ? d * FieldElement(fp, -1) : d;
}

inline Poly resultant_y(const std::vector<Poly>& P, const std::vector<Poly>& Q, Field fp) {
  const int m = static_cast<int>(P.size()) - 1, n = static_cast<int>(Q.size()) - 1;
  const int s = m + n;
  std::vector<std::vector<Poly>> syl(s, std::vector<Poly>(s, Poly(fp)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) syl[r][r + i] = P[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) syl[n + r][r + i] = Q[n - i];
  return det_bareiss(std::move(syl), fp);
}

inline Poly specialize_y(const std::vector<Poly>& P, const FieldElement& x0) {
  std::vector<FieldElement> c;
  for (const auto& coeff : P) c.push_back(coeff.lift(x0.field()).evaluate(x0));
  return Poly(x0.field(), std::move(c));
}

// Common y-roots over x0's field of the specialized polynomials. Sets
// `all_zero` when every polynomial vanishes identically on the fibre.
inline std::vector<FieldElement> common_fibre_roots(const std::vector<std::vector<Poly>>& polys,
                                                    const FieldElement& x0, bool& all_zero) {
  Poly g(x0.field());
  for (const auto& P : polys) g = gcd(g, specialize_y(P, x0));
  all_zero = g.is_zero();
  if (all_zero) return {};
  return poly_roots(g);
}

}  // namespace detail

inline SmoothnessReport Curve::quartic_smoothness() const {
  const uint32_t p = this->p();
  Field fp = field_;
  detail::Hom F;
  const auto& mons = quartic_monomials();
  for (int i = 0; i < 15; ++i)
    if (quartic().coeffs[i] != 0) F.push_back({mons[i], quartic().coeffs[i]});
  std::vector<detail::Hom> sys = {F};
  for (int v = 0; v < 3; ++v) {
    auto d = detail::hom_derivative(F, v, p);
    if (!d.empty()) sys.push_back(d);
  }

  auto singular_at = [&](const FieldElement& x, const FieldElement& y, const FieldElement& z) {
    for (const auto& h : sys)
      if (!detail::hom_eval(h, x, y, z).is_zero()) return false;
    return true;
  };

  // (1:0:0)
  {
    FieldElement one = FieldElement::one(fp), zero = FieldElement::zero(fp);
    if (singular_at(one, zero, zero)) return {false, Point{{one, zero, zero}}};
  }
  // (x:1:0): the singular locus has at most six points when finite, so a
  // common root of these univariates of degree <= 4 lives in F_{p^j}, j <= 4
  {
    Poly g(fp);
    for (const auto& h : sys) {
      Poly u(fp);
      for (const auto& [e, c] : h)
        if (e[2] == 0) u = u + Poly::monomial(fp, e[0], FieldElement(fp, c));
      g = gcd(g, u);
    }
    if (g.is_zero()) {
      FieldElement one = FieldElement::one(fp), zero = FieldElement::zero(fp);
      return {false, Point{{zero, one, zero}}};
    }
    for (int j = 1; j <= 4 && g.degree() > 0; ++j) {
      Field fq = build_extension(p, j);
      auto roots = poly_roots(g.lift(fq));
      if (!roots.empty())
        return {false, Point{{roots.front(), FieldElement::one(fq), FieldElement::zero(fq)}}};
    }
  }
  // affine part z = 1: eliminate y, then test candidate fibres
  std::vector<std::vector<Poly>> aff;
  for (const auto& h : sys) {
    auto a = detail::hom_affine(h, fp);
    if (!a.empty()) aff.push_back(std::move(a));
  }
  Poly elim(fp);
  for (size_t i = 0; i < aff.size() && elim.is_zero(); ++i)
    if (aff[i].size() == 1) elim = aff[i][0];
  for (size_t i = 0; i < aff.size() && elim.is_zero(); ++i)
    for (size_t k = i + 1; k < aff.size() && elim.is_zero(); ++k)
      if (aff[i].size() > 1 && aff[k].size() > 1) elim = detail::resultant_y(aff[i], aff[k], fp);

  auto try_fibres = [&](Field fq, const std::vector<FieldElement>& xs) -> std::optional<Point> {
    for (const auto& x0 : xs) {
      bool all_zero = false;
      auto ys = detail::common_fibre_roots(aff, x0, all_zero);
      if (all_zero) return Point{{x0, FieldElement::zero(fq), FieldElement::one(fq)}};
      if (!ys.empty()) return Point{{x0, ys.front(), FieldElement::one(fq)}};
    }
    return std::nullopt;
  };

  if (!elim.is_zero()) {
    if (elim.degree() == 0) return {true, std::nullopt};
    for (int j = 1; j <= kMaxExtensionDegree; ++j) {
      Field fq = build_extension(p, j);
      if (auto w = try_fibres(fq, poly_roots(elim.lift(fq)))) return {false, w};
    }
    return {true, std::nullopt};
  }
  // Every elimination vanished: the polynomials share a factor, so the
  // singular locus contains a curve, which has points over a small field.
  for (int j = 1; j <= 3 && ipow(p, j) <= 20000; ++j) {
    Field fq = build_extension(p, j);
    std::vector<FieldElement> xs;
    for (uint64_t i = 0; i < fq->size; ++i) xs.push_back(FieldElement::from_index(fq, i));
    if (auto w = try_fibres(fq, xs)) return {false, w};
  }
  throw Error(ErrorKind::Inconsistent, "smoothness could not be decided");
}

inline SmoothnessReport Curve::validate_smooth() const {
  if (kind() == ModelKind::Quartic) return quartic_smoothness();
  Poly f = hyper_f(field_);
  Poly g = gcd(f, f.derivative());
  if (g.degree() == 0) return {true, std::nullopt};
  for (int j = 1; j <= kMaxExtensionDegree; ++j) {
    Field fq = build_extension(p(), j);
    auto roots = poly_roots(g.lift(fq));
    if (!roots.empty())
      return {false, Point{{roots.front(), FieldElement::zero(fq), FieldElement::one(fq)}}};
  }
  throw Error(ErrorKind::Inconsistent, "repeated factor of f without a root in F_{p^j}, j <= 6");
}

inline void require_smooth(const Curve& c) {
  auto r = c.validate_smooth();
  if (!r.smooth)
    throw Error(ErrorKind::Singular, "curve " + c.id().to_string() + " is singular at " + r.witness->to_string() +
                                         " over F_" + std::to_string(r.witness->field()->size));
}

// -- enumeration ------------------------------------------------------------

inline std::vector<Point> rational_points(const Curve& c, int j = 1) { return c.points(j); }

/// Closed points of degree <= n (n <= 3), sorted by (degree, representative).
inline std::vector<Place> places_up_to_degree(const Curve& c, int n) {
  if (n < 1 || n > 3) throw Error(ErrorKind::InvalidInput, "place degree must be in [1, 3]");
  std::vector<Place> out;
  for (int d = 1; d <= n; ++d) {
    for (const auto& pt : c.points(d)) {
      if (d > 1 && pt.in_prime_field()) continue;
      Point q = pt.frobenius();
      bool minimal = true;
      for (int i = 1; i < d; ++i, q = q.frobenius())
        if (q < pt) minimal = false;
      if (minimal) out.push_back({d, pt});
    }
  }
  return out;
}

/// N_1 .. N_n.
inline std::vector<int64_t> point_counts(const Curve& c, int n) {
  std::vector<int64_t> out;
  for (int j = 1; j <= n; ++j) out.push_back(static_cast<int64_t>(c.points(j).size()));
  return out;
}

// -- parsing ----------------------------------------------------------------

/// One curve-list line: `quartic <p> <c1,...,c15>` or `hyper <p> <a0,...,ad>`.
inline Curve parse_curve(std::string_view line, int line_no = 1) {
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + why);
  };
  std::istringstream in{std::string(line)};
  std::string tag, pstr, list, extra;
  if (!(in >> tag >> pstr >> list)) throw fail("expected '<quartic|hyper> <p> <coefficients>'");
  if (in >> extra) throw fail("unexpected trailing text '" + extra + "'");
  if (tag != "quartic" && tag != "hyper") throw fail("unknown model '" + tag + "'");
  uint64_t p = 0;
  try {
    size_t used = 0;
    p = std::stoull(pstr, &used);
    if (used != pstr.size()) throw fail("bad characteristic '" + pstr + "'");
  } catch (const std::logic_error&) {
    throw fail("bad characteristic '" + pstr + "'");
  }
  if (!is_prime(p) || p >= (1u << 16))
    throw Error(ErrorKind::InvalidField, "line " + std::to_string(line_no) + ": " + pstr + " is not a supported prime");
  std::vector<uint32_t> coeffs;
  size_t start = 0;
  while (start <= list.size()) {
    size_t end = list.find(',', start);
    if (end == std::string::npos) end = list.size();
    std::string tok = list.substr(start, end - start);
    try {
      size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw fail("bad coefficient '" + tok + "'");
      long long m = v % static_cast<long long>(p);
      coeffs.push_back(static_cast<uint32_t>(m < 0 ? m + static_cast<long long>(p) : m));
    } catch (const std::logic_error&) {
      throw fail("bad coefficient '" + tok + "'");
    }
    start = end + 1;
  }
  try {
    if (tag == "quartic") {
      if (coeffs.size() != 15) throw fail("quartic needs 15 coefficients, got " + std::to_string(coeffs.size()));
      PlaneQuartic q;
      q.p = static_cast<uint32_t>(p);
      std::copy(coeffs.begin(), coeffs.end(), q.coeffs.begin());
      return Curve(q);
    }
    if (coeffs.size() != 8 && coeffs.size() != 9)
      throw fail("hyper needs 8 or 9 coefficients, got " + std::to_string(coeffs.size()));
    return Curve(HyperellipticModel{static_cast<uint32_t>(p), coeffs});
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
  }
}

/// Non-comment, non-blank lines of a curve list.
inline std::vector<Curve> parse_curve_list(std::istream& in) {
  std::vector<Curve> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_curve(line, no));
  }
  return out;
}

/// Smooth members of the family y^3 z = a x^4 + b x^2 z^2 + c x z^3 + d z^4
/// (a != 0), in increasing (a, b, c, d) order, at most `limit` of them. The
/// three curves over F_7 and F_13 worked out by hand all belong to it.
inline std::vector<Curve> naive_picard_family(uint32_t p, size_t limit) {
  std::vector<Curve> out;
  for (uint32_t a = 1; a < p && out.size() < limit; ++a)
    for (uint32_t b = 0; b < p && out.size() < limit; ++b)
      for (uint32_t c = 0; c < p && out.size() < limit; ++c)
        for (uint32_t d = 0; d < p && out.size() < limit; ++d) {
          PlaneQuartic q;
          q.p = p;
          q.coeffs[0] = (p - a) % p;
          q.coeffs[5] = (p - b) % p;
          q.coeffs[9] = (p - c) % p;
          q.coeffs[14] = (p - d) % p;
          q.coeffs[11] = 1;
          Curve cv(q);
          if (cv.validate_smooth().smooth) out.push_back(cv);
        }
  return out;
}

}  // namespace manypoints
