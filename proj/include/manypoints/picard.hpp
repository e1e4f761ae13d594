#pragma once

// Divisors, Riemann-Roch spaces and the degree-0 class group of a genus-3
// curve, by linear algebra on spaces of sections of m*H.
//
// H is the line section for a plane quartic (sections are forms of degree m,
// deg = 4m) and the pole divisor of x for a hyperelliptic model (sections are
// x^i, i <= m, and x^j y, j <= m - 4; deg = 2m). A section s has an effective
// zero divisor Z(s) of degree deg(mH); every function is a ratio of two
// sections of the same level.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "manypoints/curves.hpp"
#include "manypoints/error.hpp"
#include "manypoints/gf.hpp"
#include "manypoints/linalg.hpp"
#include "manypoints/zeta.hpp"

namespace manypoints {

/// Finite formal sum of places, keyed by index into a place list.
class Divisor {
 public:
  Divisor() = default;
  static Divisor single(int place, int mult = 1) {
    Divisor d;
    d.add(place, mult);
    return d;
  }

  void add(int place, int mult) {
    if (mult == 0) return;
    int& m = mult_[place];
    m += mult;
    if (m == 0) mult_.erase(place);
  }
  int operator[](int place) const {
    auto it = mult_.find(place);
    return it == mult_.end() ? 0 : it->second;
  }
  const std::map<int, int>& terms() const { return mult_; }
  bool is_zero() const { return mult_.empty(); }
  bool is_effective() const {
    for (const auto& [p, m] : mult_)
      if (m < 0) return false;
    return true;
  }

  int degree(const std::vector<Place>& places) const {
    int d = 0;
    for (const auto& [p, m] : mult_) d += m * places.at(p).degree;
    return d;
  }

  Divisor positive_part() const {
    Divisor r;
    for (const auto& [p, m] : mult_)
      if (m > 0) r.add(p, m);
    return r;
  }
  Divisor negative_part() const {
    Divisor r;
    for (const auto& [p, m] : mult_)
      if (m < 0) r.add(p, -m);
    return r;
  }

  friend Divisor operator+(Divisor a, const Divisor& b) {
    for (const auto& [p, m] : b.mult_) a.add(p, m);
    return a;
  }
  friend Divisor operator-(Divisor a, const Divisor& b) {
    for (const auto& [p, m] : b.mult_) a.add(p, -m);
    return a;
  }
  friend Divisor operator*(int k, const Divisor& a) {
    Divisor r;
    for (const auto& [p, m] : a.mult_) r.add(p, k * m);
    return r;
  }
  friend bool operator==(const Divisor&, const Divisor&) = default;

  std::string to_string(const std::vector<Place>& places) const {
    if (mult_.empty()) return "0";
    std::string s;
    for (const auto& [p, m] : mult_) {
      if (!s.empty()) s += m < 0 ? " - " : " + ";
      else if (m < 0) s += "-";
      int a = m < 0 ? -m : m;
      if (a != 1) s += std::to_string(a) + "*";
      s += places.at(p).rep.to_string();
    }
    return s;
  }

 private:
  std::map<int, int> mult_;
};

/// Ratio of two sections of the same level, coefficients in the section basis.
struct FunctionRep {
  int level = 0;
  Row numerator;
  Row denominator;
};

struct RiemannRochSpace {
  int level = 0;
  Row denominator;
  std::vector<Row> numerators;
  int dimension() const { return static_cast<int>(numerators.size()); }
  std::vector<FunctionRep> basis() const {
    std::vector<FunctionRep> out;
    for (const auto& n : numerators) out.push_back({level, n, denominator});
    return out;
  }
};

/// Effective degree-3 divisor packed as three sorted place indices (a place
/// of multiplicity k appears k times; unused slots hold the sentinel). The
/// integer order of keys is the fixed total order on such divisors.
using DivisorKey = uint64_t;
inline constexpr uint64_t kKeySentinel = (1u << 21) - 1;

inline DivisorKey pack_key(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  if (ids.size() > 3) throw Error(ErrorKind::Inconsistent, "key needs at most three places");
  uint64_t k = 0;
  for (size_t i = 0; i < 3; ++i) k = (k << 21) | (i < ids.size() ? static_cast<uint64_t>(ids[i]) : kKeySentinel);
  return k;
}

inline Divisor unpack_key(DivisorKey k) {
  Divisor d;
  for (int i = 2; i >= 0; --i) {
    uint64_t id = (k >> (21 * i)) & kKeySentinel;
    if (id != kKeySentinel) d.add(static_cast<int>(id), 1);
  }
  return d;
}

class SectionEngine {
 public:
  /// `base` is the index of a degree-1 place used for padding and as the
  /// base point of classes; defaults to the first rational place.
  explicit SectionEngine(const Curve& curve, std::optional<int> base = std::nullopt)
      : curve_(curve), places_(places_up_to_degree(curve, 3)) {
    require_smooth(curve_);
    if (places_.empty() || places_.front().degree != 1)
      throw Error(ErrorKind::Unsupported, "curve " + curve_.id().to_string() + " has no rational point");
    base_ = base.value_or(0);
    if (base_ < 0 || base_ >= static_cast<int>(places_.size()) || places_[base_].degree != 1)
      throw Error(ErrorKind::InvalidInput, "base point must be a rational place");
    cache_.resize(places_.size());
    place_index_.reserve(places_.size());
    for (size_t i = 0; i < places_.size(); ++i) place_index_[places_[i]] = static_cast<int>(i);
    if (curve_.kind() == ModelKind::Quartic) {
      const auto& mons = quartic_monomials();
      for (int i = 0; i < 15; ++i)
        if (curve_.quartic().coeffs[i] != 0) {
          leading_ = mons[i];
          break;
        }
    }
  }

  const Curve& curve() const { return curve_; }
  const std::vector<Place>& places() const { return places_; }
  int base() const { return base_; }
  uint32_t p() const { return curve_.p(); }

  int find_place(const Point& pt) const {
    if (!curve_.contains(pt)) throw Error(ErrorKind::InvalidInput, "point " + pt.to_string() + " is not on the curve");
    const int d = pt.field()->k;
    Point m = pt, q = pt.frobenius();
    for (int i = 1; i < d; ++i, q = q.frobenius()) m = std::min(m, q);
    auto it = place_index_.find(Place{d, m});
    if (it == place_index_.end())
      throw Error(ErrorKind::InvalidInput, "point " + pt.to_string() + " is not a place of degree <= 3");
    return it->second;
  }

  int section_degree(int m) const { return curve_.kind() == ModelKind::Quartic ? 4 * m : 2 * m; }

  int dimension(int m) { return static_cast<int>(basis(m).size()); }

  /// Smallest level whose sections have degree >= d.
  int level_for(int d) const {
    int m = 1;
    while (section_degree(m) < d) ++m;
    return m;
  }

  /// Sections of level m whose zero divisor contains Z (Z effective).
  std::vector<Row> sections_vanishing_on(int m, const Divisor& Z) {
    MatrixFp mat(p(), dimension(m));
    for (const auto& [pl, n] : Z.terms()) {
      if (n < 0) throw Error(ErrorKind::InvalidInput, "vanishing conditions need an effective divisor");
      const auto& rows = local(pl, m, n).rows;
      const int d = places_[pl].degree;
      for (int r = 0; r < n * d; ++r) mat.add_row(rows[r]);
    }
    return mat.nullspace();
  }

  /// Order of vanishing of a nonzero section at a place.
  int valuation(int pl, int m, const Row& s) {
    const int d = places_[pl].degree;
    const auto& data = local(pl, m, section_degree(m) / d + 1);
    const int n = dimension(m);
    for (int k = 0; k < data.precision; ++k)
      for (int r = 0; r < d; ++r)
        if (dot_mod(data.rows[k * d + r].data(), s.data(), n, p()) != 0) return k;
    throw Error(ErrorKind::Inconsistent, "section vanishes beyond its degree");
  }

  /// Z(s) - known, given that it is effective of degree `expected`.
  Divisor residual(int m, const Row& s, const Divisor& known, int expected) {
    Divisor R;
    int deg = 0;
    for (const auto& [pl, n] : known.terms()) {
      int v = valuation(pl, m, s);
      if (v < n) throw Error(ErrorKind::Inconsistent, "section does not vanish on the given divisor");
      if (v > n) {
        R.add(pl, v - n);
        deg += (v - n) * places_[pl].degree;
      }
    }
    const int n = dimension(m);
    for (int pl = 0; pl < static_cast<int>(places_.size()) && deg < expected; ++pl) {
      if (known[pl] != 0) continue;
      const int d = places_[pl].degree;
      if (d > expected - deg) break;
      const auto& data = local(pl, m, section_degree(m) / d + 1);
      bool zero = true;
      for (int r = 0; r < d && zero; ++r) zero = dot_mod(data.rows[r].data(), s.data(), n, p()) == 0;
      if (!zero) continue;
      int v = valuation(pl, m, s);
      R.add(pl, v);
      deg += v * d;
    }
    if (deg != expected)
      throw Error(ErrorKind::Inconsistent, "residual divisor has degree " + std::to_string(deg) + ", expected " +
                                               std::to_string(expected));
    return R;
  }

  /// Effective divisor of a level-m section (supported on places of degree
  /// <= 3 only when that is the case; throws otherwise).
  Divisor zero_divisor(int m, const Row& s) { return residual(m, s, Divisor{}, section_degree(m)); }

  /// L(D) for D = A - B, realized as {g / h}: h vanishes on A + pad with a
  /// residual R of degree 3, and g ranges over sections vanishing on pad + R + B.
  RiemannRochSpace riemann_roch_space(const Divisor& D) {
    const Divisor A = D.positive_part(), B = D.negative_part();
    const int degA = A.degree(places_);
    const int m = level_for(degA + 3);
    const int k = section_degree(m) - 3 - degA;
    const Divisor pad = Divisor::single(base_, k);
    auto hs = sections_vanishing_on(m, A + pad);
    if (hs.empty()) throw Error(ErrorKind::Inconsistent, "no section through A + pad");
    const Divisor R = residual(m, hs.front(), A + pad, 3);
    RiemannRochSpace out;
    out.level = m;
    out.denominator = hs.front();
    out.numerators = sections_vanishing_on(m, pad + R + B);
    return out;
  }

  int l(const Divisor& D) { return riemann_roch_space(D).dimension(); }

  /// div(num / den) for a function given as two sections of the same level.
  Divisor principal_divisor(const FunctionRep& f) {
    return zero_divisor(f.level, f.numerator) - zero_divisor(f.level, f.denominator);
  }

  /// An effective canonical divisor, 2*O + (residual of degree 2).
  Divisor canonical_divisor() {
    const int m = curve_.kind() == ModelKind::Quartic ? 1 : 2;
    const Divisor twoO = Divisor::single(base_, 2);
    auto s = sections_vanishing_on(m, twoO);
    return twoO + residual(m, s.front(), twoO, 2);
  }

  /// Effective E of degree 3 with E ~ A - B + 3*O, for effective A, B of equal degree.
  Divisor reduce(const Divisor& A, const Divisor& B) {
    const int degA = A.degree(places_);
    if (degA != B.degree(places_)) throw Error(ErrorKind::InvalidInput, "reduce needs deg A = deg B");
    const int m = level_for(degA + 6);
    const int j = section_degree(m) - 6 - degA;
    const Divisor first = A + Divisor::single(base_, 3 + j);
    auto hs = sections_vanishing_on(m, first);
    const Divisor R1 = residual(m, hs.front(), first, 3);
    const Divisor second = R1 + B + Divisor::single(base_, j);
    auto gs = sections_vanishing_on(m, second);
    return residual(m, gs.front(), second, 3);
  }

  /// All members of the complete linear system |E| of an effective degree-3 E.
  std::vector<Divisor> linear_system(const Divisor& E) {
    const int m = level_for(6);
    const int k = section_degree(m) - 6;
    const Divisor pad = Divisor::single(base_, k);
    auto hs = sections_vanishing_on(m, E + pad);
    const Divisor R = residual(m, hs.front(), E + pad, 3);
    const Divisor known = pad + R;
    auto basis = sections_vanishing_on(m, known);
    if (basis.size() == 1) return {E};
    std::vector<Divisor> out;
    const int l = static_cast<int>(basis.size());
    const int n = dimension(m);
    // projective points of F_p^l, first nonzero coordinate 1
    for (int lead = 0; lead < l; ++lead) {
      const int free = l - 1 - lead;
      uint64_t count = ipow(p(), free);
      for (uint64_t idx = 0; idx < count; ++idx) {
        Row g(n, 0);
        for (int c = 0; c < n; ++c) g[c] = basis[lead][c];
        uint64_t t = idx;
        for (int i = lead + 1; i < l; ++i) {
          uint32_t coef = static_cast<uint32_t>(t % p());
          t /= p();
          if (coef == 0) continue;
          for (int c = 0; c < n; ++c) g[c] = static_cast<uint32_t>((g[c] + uint64_t{coef} * basis[i][c]) % p());
        }
        out.push_back(residual(m, g, known, 3));
      }
    }
    return out;
  }

  DivisorKey key(const Divisor& E) const {
    std::vector<int> ids;
    for (const auto& [pl, n] : E.terms()) {
      if (n < 0) throw Error(ErrorKind::InvalidInput, "key of a non-effective divisor");
      for (int i = 0; i < n; ++i) ids.push_back(pl);
    }
    if (E.degree(places_) != 3 || ids.size() > 3) throw Error(ErrorKind::InvalidInput, "key needs a degree-3 divisor");
    return pack_key(std::move(ids));
  }

  /// Number of basis elements and the chart exponents of each, per level.
  struct BasisItem {
    std::array<int, 3> mono;  // quartic: (a, b, c); hyperelliptic: (i, is_y, 0)
  };
  const std::vector<BasisItem>& basis(int m) {
    if (static_cast<int>(basis_.size()) <= m) basis_.resize(m + 1);
    auto& b = basis_[m];
    if (!b.empty()) return b;
    if (curve_.kind() == ModelKind::Quartic) {
      for (int a = m; a >= 0; --a)
        for (int bb = m - a; bb >= 0; --bb) {
          std::array<int, 3> e{a, bb, m - a - bb};
          if (e[0] >= leading_[0] && e[1] >= leading_[1] && e[2] >= leading_[2]) continue;
          b.push_back({e});
        }
    } else {
      for (int i = 0; i <= m; ++i) b.push_back({{i, 0, 0}});
      for (int j = 0; j + 4 <= m; ++j) b.push_back({{j, 1, 0}});
    }
    return b;
  }

 private:
  struct LocalData {
    int precision = 0;
    std::vector<Row> rows;  // rows[k * d + r] = F_p-coordinate r of [t^k] of each basis element
  };
  struct Expansion {
    int precision = 0;
    Chart::Kind kind{};
    std::vector<std::vector<FieldElement>> apow, bpow;  // powers of a(t), b(t)
  };
  struct PlaceCache {
    Expansion exp;
    std::map<int, LocalData> levels;
  };

  using Series = std::vector<FieldElement>;

  static Series mul(const Series& x, const Series& y, int n) {
    Series r(n, FieldElement::zero(x[0].field()));
    for (int i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; i + j < n; ++j) r[i + j] += x[i] * y[j];
    }
    return r;
  }

  // (a(t), b(t)) on the curve through the chart point, to precision n.
  void expand(int pl, int n) {
    auto& e = cache_[pl].exp;
    if (e.precision >= n) return;
    const Point& pt = places_[pl].rep;
    Field f = pt.field();
    const Chart ch = curve_.chart(pt);
    const FieldElement zero = FieldElement::zero(f);
    int maxa = 0, maxb = 0;
    for (const auto& t : ch.terms) maxa = std::max(maxa, t.i), maxb = std::max(maxb, t.j);
    auto eval = [&](const Series& a, const Series& b) {
      std::vector<Series> ap{Series(n, zero)}, bp{Series(n, zero)};
      ap[0][0] = bp[0][0] = FieldElement::one(f);
      for (int i = 1; i <= maxa; ++i) ap.push_back(mul(ap.back(), a, n));
      for (int j = 1; j <= maxb; ++j) bp.push_back(mul(bp.back(), b, n));
      Series r(n, zero);
      for (const auto& t : ch.terms) {
        Series m = mul(ap[t.i], bp[t.j], n);
        FieldElement c(f, t.coeff);
        for (int k = 0; k < n; ++k) r[k] += c * m[k];
      }
      return r;
    };
    // partial derivatives at the chart point
    FieldElement ga = zero, gb = zero;
    for (const auto& t : ch.terms) {
      FieldElement c(f, t.coeff);
      if (t.i > 0) ga += c * FieldElement(f, t.i) * ch.a0.pow(t.i - 1) * ch.b0.pow(t.j);
      if (t.j > 0) gb += c * FieldElement(f, t.j) * ch.a0.pow(t.i) * ch.b0.pow(t.j - 1);
    }
    if (ga.is_zero() && gb.is_zero()) throw Error(ErrorKind::Singular, "singular point " + pt.to_string());
    Series a(n, zero), b(n, zero);
    a[0] = ch.a0;
    b[0] = ch.b0;
    const bool solve_b = !gb.is_zero();
    Series& param = solve_b ? a : b;
    Series& solved = solve_b ? b : a;
    const FieldElement inv = (solve_b ? gb : ga).inverse();
    if (n > 1) param[1] = FieldElement::one(f);
    for (int k = 1; k < n; ++k) {
      Series g = eval(a, b);
      solved[k] = -(g[k] * inv);
    }
    e.precision = n;
    e.kind = ch.kind;
    int top = std::max(maxa, maxb) + 8;
    e.apow.assign(1, Series(n, zero));
    e.bpow.assign(1, Series(n, zero));
    e.apow[0][0] = e.bpow[0][0] = FieldElement::one(f);
    for (int i = 1; i <= top; ++i) {
      e.apow.push_back(mul(e.apow.back(), a, n));
      e.bpow.push_back(mul(e.bpow.back(), b, n));
    }
    cache_[pl].levels.clear();
  }

  // chart exponents (of a, b) of a basis item at level m
  std::pair<int, int> chart_exponents(Chart::Kind kind, const BasisItem& it, int m) const {
    const auto& e = it.mono;
    switch (kind) {
      case Chart::QuarticZ: return {e[0], e[1]};
      case Chart::QuarticY: return {e[0], e[2]};
      case Chart::QuarticX: return {e[1], e[2]};
      case Chart::HyperFinite: return {e[0], e[1]};
      case Chart::HyperInfinite: return e[1] == 0 ? std::pair{m - e[0], 0} : std::pair{m - e[0] - 4, 1};
    }
    return {0, 0};
  }

  const LocalData& local(int pl, int m, int precision) {
    auto& pc = cache_[pl];
    precision = std::max(precision, section_degree(m) / places_[pl].degree + 1);
    auto it = pc.levels.find(m);
    if (it != pc.levels.end() && it->second.precision >= precision) return it->second;
    expand(pl, std::max(precision, pc.exp.precision));
    const int n = pc.exp.precision;
    const int d = places_[pl].degree;
    const auto& items = basis(m);
    LocalData data;
    data.precision = n;
    data.rows.assign(n * d, Row(items.size(), 0));
    const int top = static_cast<int>(pc.exp.apow.size()) - 1;
    for (size_t c = 0; c < items.size(); ++c) {
      auto [ea, eb] = chart_exponents(pc.exp.kind, items[c], m);
      if (ea > top || eb > top) throw Error(ErrorKind::Inconsistent, "expansion power table too small");
      Series s = mul(pc.exp.apow[ea], pc.exp.bpow[eb], n);
      for (int k = 0; k < n; ++k)
        for (int r = 0; r < d; ++r) data.rows[k * d + r][c] = s[k].coefficient(r);
    }
    return pc.levels[m] = std::move(data);
  }

  Curve curve_;
  std::vector<Place> places_;
  int base_ = 0;
  std::array<int, 3> leading_{99, 99, 99};
  std::vector<PlaceCache> cache_;
  std::vector<std::vector<BasisItem>> basis_;
  struct PlaceHash {
    size_t operator()(const Place& p) const {
      size_t h = static_cast<size_t>(p.degree);
      for (const auto& c : p.rep.c) h = h * 1000003u + static_cast<size_t>(c.index());
      return h;
    }
  };
  std::unordered_map<Place, int, PlaceHash> place_index_;
};

/// All classes of Pic^0(C) with canonical representatives E (class [E - 3O]).
class ClassGroup {
 public:
  /// Enumerates the group with O = `base` (a rational place index) and checks
  /// its size against P(1).
  explicit ClassGroup(const Curve& curve, std::optional<int> base = std::nullopt)
      : engine_(curve, base), lpoly_(l_polynomial(point_counts(curve, 3), 3, curve.p())) {
    enumerate();
  }

  SectionEngine& engine() { return engine_; }
  const std::vector<Place>& places() const { return engine_.places(); }
  int base() const { return engine_.base(); }
  const LPolynomial& lpoly() const { return lpoly_; }
  int size() const { return static_cast<int>(reps_.size()); }
  int identity() const { return identity_; }
  DivisorKey representative(int cls) const { return reps_.at(cls); }
  Divisor representative_divisor(int cls) const { return unpack_key(reps_.at(cls)); }

  int class_of_key(DivisorKey k) const {
    auto it = index_.find(k);
    if (it == index_.end()) throw Error(ErrorKind::Inconsistent, "divisor missing from class table");
    return it->second;
  }
  /// Class of an effective degree-3 divisor E, i.e. of E - 3O.
  int class_of_effective(const Divisor& E) const { return class_of_key(engine_.key(E)); }

  /// Class of a degree-0 divisor.
  int reduce_class(const Divisor& D) {
    if (D.degree(places()) != 0) throw Error(ErrorKind::InvalidInput, "reduce_class needs a degree-0 divisor");
    return class_of_effective(engine_.reduce(D.positive_part(), D.negative_part()));
  }

  int add(int a, int b) {
    const Divisor O6 = Divisor::single(base(), 6);
    return class_of_effective(engine_.reduce(representative_divisor(a) + representative_divisor(b), O6));
  }
  int neg(int a) {
    return class_of_effective(engine_.reduce(Divisor::single(base(), 3), representative_divisor(a)));
  }
  int mul(int a, int64_t n) {
    int r = identity_, x = a;
    bool negate = n < 0;
    if (negate) n = -n;
    while (n > 0) {
      if (n & 1) r = add(r, x);
      n >>= 1;
      if (n) x = add(x, x);
    }
    return negate ? neg(r) : r;
  }

  /// Class of P - deg(P) * O.
  int point_class(int place) const {
    const int d = places().at(place).degree;
    std::vector<int> ids(3 - d, base());
    ids.push_back(place);
    return class_of_key(pack_key(ids));
  }

 private:
  void enumerate() {
    const auto& pl = places();
    std::vector<int> d1, d2, d3;
    for (int i = 0; i < static_cast<int>(pl.size()); ++i) (pl[i].degree == 1 ? d1 : pl[i].degree == 2 ? d2 : d3).push_back(i);
    std::vector<DivisorKey> keys;
    for (size_t i = 0; i < d1.size(); ++i)
      for (size_t j = i; j < d1.size(); ++j)
        for (size_t k = j; k < d1.size(); ++k) keys.push_back(pack_key({d1[i], d1[j], d1[k]}));
    for (int a : d1)
      for (int b : d2) keys.push_back(pack_key({a, b}));
    for (int c : d3) keys.push_back(pack_key({c}));
    std::sort(keys.begin(), keys.end());
    index_.reserve(keys.size() * 2);
    // Keys are visited in increasing order, so the first unseen member of a
    // linear system is its minimum: class ids come out sorted by representative.
    for (DivisorKey k : keys) {
      if (index_.count(k)) continue;
      const int id = static_cast<int>(reps_.size());
      reps_.push_back(k);
      for (const auto& member : engine_.linear_system(unpack_key(k))) {
        auto [it, fresh] = index_.emplace(engine_.key(member), id);
        if (!fresh && it->second != id) throw Error(ErrorKind::Inconsistent, "linear systems overlap");
      }
      if (index_.at(k) != id) throw Error(ErrorKind::Inconsistent, "divisor not in its own linear system");
    }
    const int64_t h = class_number(lpoly_);
    if (static_cast<int64_t>(reps_.size()) != h)
      throw Error(ErrorKind::Inconsistent, "enumerated " + std::to_string(reps_.size()) + " classes but P(1) = " +
                                               std::to_string(h));
    identity_ = class_of_key(pack_key({base(), base(), base()}));
  }

  SectionEngine engine_;
  LPolynomial lpoly_;
  std::vector<DivisorKey> reps_;
  std::unordered_map<DivisorKey, int> index_;
  int identity_ = 0;
};

}  // namespace manypoints
