// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <bitset>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "golden.hpp"
#include "toy_group.hpp"
#include "manypoints/manypoints.hpp"

using namespace manypoints;

namespace {

struct Check {
  std::ostringstream why;
  bool ok = true;
  void expect(bool cond, const std::string& msg) {
    if (!cond && ok) why << msg;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int n, const std::string& name, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(dt <= budget_s, "over time budget");
  std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << name << " (" << std::fixed
            << std::setprecision(1) << dt << " s)";
  if (!c.ok) std::cout << " -- " << c.why.str();
  std::cout << std::endl;
  if (!c.ok) ++failures;
}

int place_named(const CurveAnalysis& a, const std::string& name) {
  for (int i : a.rational_places())
    if (a.places()[i].rep.to_string() == name) return i;
  throw std::runtime_error("no rational place " + name);
}

std::vector<std::string> sorted_points(const CurveAnalysis& a) {
  std::vector<std::string> s;
  for (int i : a.rational_places()) s.push_back(a.places()[i].rep.to_string());
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Curve> sample_curves() {
  std::ifstream in(MANYPOINTS_DATA_DIR "/sample_curves.txt");
  return parse_curve_list(in);
}

Divisor random_effective(const std::vector<Place>& places, int max_deg, std::mt19937& rng) {
  Divisor D;
  int budget = static_cast<int>(rng() % (max_deg + 1));
  for (int tries = 0; budget > 0 && tries < 20; ++tries) {
    int pl = static_cast<int>(rng() % places.size());
    if (places[pl].degree > budget) continue;
    D.add(pl, 1);
    budget -= places[pl].degree;
  }
  return D;
}

void chains(int64_t limit, std::vector<int64_t>& cur, std::vector<std::vector<int64_t>>& out) {
  int64_t prod = 1;
  for (auto x : cur) prod *= x;
  out.push_back(cur);
  const int64_t last = cur.empty() ? 1 : cur.back();
  for (int64_t m = last == 1 ? 2 : last; prod * m <= limit; m += last == 1 ? 1 : last) {
    cur.push_back(m);
    chains(limit, cur, out);
    cur.pop_back();
  }
}

const std::array<std::array<int, 3>, 15> kOrder = {{{4, 0, 0}, {3, 1, 0}, {3, 0, 1}, {2, 2, 0}, {2, 1, 1},
                                                    {2, 0, 2}, {1, 3, 0}, {1, 2, 1}, {1, 1, 2}, {1, 0, 3},
                                                    {0, 4, 0}, {0, 3, 1}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4}}};

size_t plane_count(const PlaneQuartic& q, int j) {
  Field f = build_extension(q.p, j);
  const auto zero = FieldElement::zero(f), one = FieldElement::one(f);
  auto on_curve = [&](const std::array<FieldElement, 3>& v) {
    auto s = zero;
    for (int i = 0; i < 15; ++i)
      s += FieldElement(f, q.coeffs[i]) * v[0].pow(kOrder[i][0]) * v[1].pow(kOrder[i][1]) * v[2].pow(kOrder[i][2]);
    return s.is_zero();
  };
  size_t n = on_curve({one, zero, zero});
  for (uint64_t i = 0; i < f->size; ++i) {
    n += on_curve({FieldElement::from_index(f, i), one, zero});
    for (uint64_t k = 0; k < f->size; ++k)
      n += on_curve({FieldElement::from_index(f, i), FieldElement::from_index(f, k), one});
  }
  return n;
}

std::string str(int64_t v) { return std::to_string(v); }

}  // namespace

int main() {
  criterion(1, "curve A: 14 points, Z/903, (15, 56) from O = (0:1:1)", 60, [](Check& c) {
    auto a = analyze_curve(parse_curve(golden::kCurveA));
    c.expect(sorted_points(a) == sorted(golden::kPointsA), "point list differs; ");
    c.expect(a.class_number() == 903, "class number " + str(a.class_number()) + "; ");
    c.expect(a.structure.invariants == std::vector<int64_t>{903}, "invariants " + invariants_to_string(a.structure.invariants) + "; ");
    auto subs = enumerate_subgroups(a.structure.invariants, 7);
    c.expect(subs.size() == 1, "index-7 subgroups: " + str(subs.size()) + "; ");
    if (subs.size() == 1) {
      auto inv = cover_invariants(a, place_named(a, golden::kBaseA), subs[0]);
      c.expect(inv.genus == 15 && inv.points == 56, "cover (" + str(inv.genus) + "," + str(inv.points) + "); ");
    }
  });

  criterion(2, "curve B: 12 points, [3,6,42], (9, 36) from O = (2:0:1)", 60, [](Check& c) {
    auto a = analyze_curve(parse_curve(golden::kCurveB));
    c.expect(sorted_points(a) == sorted(golden::kPointsB), "point list differs; ");
    c.expect(a.structure.invariants == std::vector<int64_t>{3, 6, 42},
             "invariants " + invariants_to_string(a.structure.invariants) + "; ");
    const int O = place_named(a, golden::kBaseB);
    const auto reading = subgroup_from_generators({3, 6, 42}, {{1, 0, 0}, {0, 2, 0}, {0, 0, 2}});
    bool hit = false, reading_hit = false;
    for (const auto& G : enumerate_subgroups(a.structure.invariants, 4)) {
      auto inv = cover_invariants(a, O, G);
      if (inv.genus == 9 && inv.points == 36) {
        hit = true;
        reading_hit = reading_hit || G == reading;
      }
    }
    c.expect(hit, "no index-4 subgroup gives (9, 36); ");
    c.expect(reading_hit, "componentwise (1,2,2) subgroup does not give (9, 36); ");
  });

  criterion(3, "curve C: h = 3888, [3,3,3,12,12], (19, 108) at index 9", 300, [](Check& c) {
    auto a = analyze_curve(parse_curve(golden::kCurveC));
    c.expect(a.class_number() == 3888, "class number " + str(a.class_number()) + "; ");
    c.expect(a.structure.invariants == std::vector<int64_t>{3, 3, 3, 12, 12},
             "invariants " + invariants_to_string(a.structure.invariants) + "; ");
    int64_t best = 0;
    for (int O : a.rational_places())
      for (const auto& G : enumerate_subgroups(a.structure.invariants, 9)) {
        auto inv = cover_invariants(a, O, G);
        if (inv.genus == 19) best = std::max(best, inv.points);
      }
    c.expect(best == 108, "best genus-19 count " + str(best) + "; ");
  });

  criterion(4, "Serre demo: C1, C2 = (4, 8), fibre product (11, 14)", 10, [](Check& c) {
    auto r = serre::run_demo();
    c.expect(r.phi_ok, "phi is not a homomorphism; ");
    c.expect(r.d1_principal && r.d2_principal, "D1 or D2 not principal; ");
    c.expect(r.c1.genus == 4 && r.c1.points == 8, "C1 wrong; ");
    c.expect(r.c2.genus == 4 && r.c2.points == 8, "C2 wrong; ");
    c.expect(r.fibre.genus == 11 && r.fibre.points == 14, "fibre product wrong; ");
  });

  criterion(5, "bounds: Ihara and Weil over F_2 for g = 4, 11", 1, [](Check& c) {
    c.expect(std::abs(ihara_bound(2, 4) - 9.7177) < 1e-3, "ihara(2,4); ");
    c.expect(std::abs(ihara_bound(2, 11) - 20.6571) < 1e-3, "ihara(2,11); ");
    c.expect(std::abs(weil_interval(2, 4).second - 14.313) < 1e-3, "weil(2,4); ");
    c.expect(std::abs(weil_interval(2, 11).second - 34.11) < 1e-2, "weil(2,11); ");
  });

  criterion(6, "property suites", 600, [](Check& c) {
    const auto curves = sample_curves();
    std::mt19937 rng(11);
    std::set<uint32_t> fields;
    for (const auto& curve : curves) {
      const std::string id = curve.id().to_string();
      SectionEngine E(curve);
      const Divisor K = E.canonical_divisor();
      for (int it = 0; it < 200; ++it) {
        Divisor D = random_effective(E.places(), 4, rng) - random_effective(E.places(), 4, rng);
        if (E.l(D) - E.l(K - D) != D.degree(E.places()) - 2) {
          c.expect(false, "Riemann-Roch fails on " + id + "; ");
          break;
        }
      }
      auto L = l_polynomial(point_counts(curve, 3), 3, curve.p());
      c.expect(L.satisfies_functional_equation(), "functional equation fails on " + id + "; ");
      c.expect(L.root_modulus_error() < 1e-6, "root modulus off on " + id + "; ");
      ClassGroup G(curve);
      c.expect(G.size() == class_number(L), "class group size differs from P(1) on " + id + "; ");
      fields.insert(curve.p());
    }
    c.expect(curves.size() >= 5 && fields == std::set<uint32_t>{5, 7, 11, 13}, "sample list too narrow; ");

    std::vector<std::vector<int64_t>> groups;
    std::vector<int64_t> cur;
    chains(200, cur, groups);
    for (const auto& inv : groups) {
      toy::Toy A(inv);
      std::set<std::string> found;
      for (int64_t d = 1; d <= A.n; ++d) {
        if (A.n % d != 0) continue;
        for (const auto& S : enumerate_subgroups(inv, d)) {
          std::bitset<256> s;
          for (int e = 0; e < A.n; ++e) s[e] = S.contains(A.coords(e));
          found.insert(s.to_string());
        }
      }
      if (found != A.all_subgroups()) c.expect(false, "subgroups of " + invariants_to_string(inv) + " differ; ");
    }

    std::ifstream bin(MANYPOINTS_DATA_DIR "/known_bounds.csv");
    const auto table = load_bounds(bin);
    SearchOptions opt;
    opt.keep_all = true;
    std::vector<Curve> small;
    for (const auto& curve : curves)
      if (curve.p() <= 7) small.push_back(curve);
    auto res = search(small, table, opt);
    c.expect(res.failures.empty(), "search failures; ");
    for (const auto& r : res.all) {
      const int64_t d = r.index();
      const bool good = r.genus == 2 * d + 1 && r.points % d == 0 && r.points >= d &&
                        r.points <= ihara_bound(static_cast<double>(r.q), r.genus) + 1e-6;
      if (!good) {
        c.expect(false, "bad record " + r.row().curve_id + " " + r.row().subgroup_hnf + "; ");
        break;
      }
    }
    c.expect(!res.all.empty(), "no records; ");

    for (const std::string& line : {golden::kCurveA, golden::kCurveB, std::string("quartic 5 0,1,0,0,0,0,0,0,0,1,0,1,0,0,0"),
                                   std::string("quartic 11 1,0,0,0,0,0,0,0,0,0,1,0,0,0,1"), golden::kCurveC,
                                   std::string("quartic 3 1,0,0,0,0,0,0,0,0,0,1,0,0,0,1")}) {
      Curve curve = parse_curve(line);
      for (int j = 1; ipow(curve.p(), j) <= 50; ++j)
        if (curve.points(j).size() != plane_count(curve.quartic(), j))
          c.expect(false, "point count differs on " + line + " j=" + str(j) + "; ");
    }
  });

  return failures == 0 ? 0 : 1;
}
