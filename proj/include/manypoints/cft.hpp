#pragma once

// Unramified abelian covers of a genus-3 curve: for a rational base point O
// and a subgroup G of Pic^0 of index d, the cover in which O splits
// completely has genus d(g - 1) + 1 and d * #{rational P : [P - O] in G}
// rational points.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "manypoints/abelian.hpp"
#include "manypoints/curves.hpp"
#include "manypoints/picard.hpp"
#include "manypoints/subgroups.hpp"
#include "manypoints/tables.hpp"
#include "manypoints/zeta.hpp"

namespace manypoints {

/// Everything computed once per curve: counts, L-polynomial, the class group
/// with base O_0 (the first rational place) and the coordinates of every
/// [P - deg(P) O_0] for places of degree <= 3.
struct CurveAnalysis {
  std::shared_ptr<ClassGroup> group;
  GroupStructure structure;
  std::vector<int64_t> counts;
  std::vector<std::vector<int64_t>> place_coords;

  const Curve& curve() const { return group->engine().curve(); }
  const std::vector<Place>& places() const { return group->places(); }
  const LPolynomial& lpoly() const { return group->lpoly(); }
  int64_t class_number() const { return structure.order(); }

  std::vector<int> rational_places() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(places().size()) && places()[i].degree == 1; ++i) out.push_back(i);
    return out;
  }

  int place_of(const Point& pt) const { return group->engine().find_place(pt); }

  /// Coordinates of [P - deg(P) O] in the invariant-factor basis.
  std::vector<int64_t> point_class_coordinates(int place, int base_place) const {
    if (places().at(base_place).degree != 1) throw Error(ErrorKind::InvalidInput, "base point must be rational");
    const int d = places().at(place).degree;
    const auto& a = place_coords.at(place);
    const auto& o = place_coords.at(base_place);
    std::vector<int64_t> r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
      r[i] = detail::pmod(a[i] - d * o[i], structure.invariants[i]);
    return r;
  }
};

inline CurveAnalysis analyze_curve(const Curve& curve, bool verify = true) {
  CurveAnalysis a;
  a.group = std::make_shared<ClassGroup>(curve);
  ClassGroup& G = *a.group;
  a.counts = point_counts(curve, 3);
  a.structure = group_structure(G.size(), G.identity(), [&G](int x, int y) { return G.add(x, y); }, verify);
  for (int pl = 0; pl < static_cast<int>(G.places().size()); ++pl) {
    auto c = a.structure.coordinates(G.point_class(pl));
    a.place_coords.emplace_back(c.begin(), c.end());
  }
  return a;
}

struct CoverInvariants {
  int genus = 0;
  int64_t points = 0;
};

inline CoverInvariants cover_invariants(const CurveAnalysis& a, int base_place, const Subgroup& G) {
  if (G.invariants != a.structure.invariants) throw Error(ErrorKind::InvalidInput, "subgroup of a different group");
  const int64_t d = G.index();
  int64_t split = 0;
  for (int pl : a.rational_places())
    if (G.contains(a.point_class_coordinates(pl, base_place))) ++split;
  return {static_cast<int>(d * (a.curve().genus() - 1) + 1), d * split};
}

struct CoverRecord {
  CurveId curve;
  int64_t q = 0;
  Point base;
  Subgroup subgroup;
  int genus = 0;
  int64_t points = 0;
  std::optional<BoundsEntry> known;
  Improvement improved = Improvement::No;

  int64_t index() const { return subgroup.index(); }

  ResultRow row() const {
    ResultRow r;
    r.q = q;
    r.curve_id = curve.to_string();
    r.base_point = base.to_string();
    r.subgroup_hnf = subgroup.to_string();
    r.index = index();
    r.genus = genus;
    r.points = points;
    if (known) {
      r.known_lower = known->lower;
      r.known_upper = known->upper;
    }
    r.improved = improved;
    return r;
  }
};

inline bool canonical_less(const CoverRecord& a, const CoverRecord& b) {
  if (a.q != b.q) return a.q < b.q;
  if (a.genus != b.genus) return a.genus < b.genus;
  if (a.curve != b.curve) return a.curve < b.curve;
  if (a.base != b.base) return a.base < b.base;
  return a.subgroup < b.subgroup;
}

inline constexpr int64_t kMaxCoverIndex = 24;

struct SearchOptions {
  int min_genus = 3;
  int max_genus = 50;
  unsigned threads = 1;
  bool keep_all = false;
  bool verify_structure = true;
};

struct SearchFailure {
  std::string curve;
  std::string message;
};

struct SearchResult {
  /// Best record per (q, genus), canonically ordered.
  std::vector<CoverRecord> best;
  /// Every record (only when keep_all is set), canonically ordered.
  std::vector<CoverRecord> all;
  std::vector<SearchFailure> failures;
  size_t curves_analyzed = 0;
};

/// Records for one curve over every rational O and every subgroup whose cover
/// genus lies in the range.
inline std::vector<CoverRecord> cover_records(const CurveAnalysis& a, const BoundsTable& table, int min_genus,
                                              int max_genus) {
  std::vector<CoverRecord> out;
  const int g = a.curve().genus();
  const int64_t h = a.class_number();
  const int64_t q = a.curve().p();
  std::vector<std::pair<int64_t, std::vector<Subgroup>>> by_index;
  for (int64_t d = 1; d <= kMaxCoverIndex; ++d) {
    const int genus = static_cast<int>(d * (g - 1) + 1);
    if (genus < min_genus || genus > max_genus || h % d != 0) continue;
    by_index.push_back({d, enumerate_subgroups(a.structure.invariants, d)});
  }
  for (int O : a.rational_places()) {
    for (const auto& [d, subs] : by_index) {
      for (const auto& G : subs) {
        auto inv = cover_invariants(a, O, G);
        CoverRecord r;
        r.curve = a.curve().id();
        r.q = q;
        r.base = a.places()[O].rep;
        r.subgroup = G;
        r.genus = inv.genus;
        r.points = inv.points;
        if (inv.points % d != 0 || inv.points < d || inv.points > ihara_bound(static_cast<double>(q), inv.genus) + 1e-6)
          throw Error(ErrorKind::Validation, "cover record violates d | N, d <= N <= Ihara bound");
        r.known = table.find(q, inv.genus);
        r.improved = classify(q, inv.genus, inv.points, r.known);
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

inline SearchResult search(const std::vector<Curve>& curves, const BoundsTable& table, const SearchOptions& opt) {
  const size_t n = curves.size();
  std::vector<std::vector<CoverRecord>> per_curve(n);
  std::vector<std::optional<std::string>> errors(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        CurveAnalysis a = analyze_curve(curves[i], opt.verify_structure);
        per_curve[i] = cover_records(a, table, opt.min_genus, opt.max_genus);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(std::max<size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SearchResult res;
  std::vector<CoverRecord> all;
  for (size_t i = 0; i < n; ++i) {
    if (errors[i]) {
      res.failures.push_back({curves[i].id().to_string(), *errors[i]});
      continue;
    }
    ++res.curves_analyzed;
    for (auto& r : per_curve[i]) all.push_back(std::move(r));
  }
  std::sort(all.begin(), all.end(), canonical_less);
  for (const auto& r : all) {
    if (!res.best.empty() && res.best.back().q == r.q && res.best.back().genus == r.genus) {
      if (r.points > res.best.back().points) res.best.back() = r;
    } else {
      res.best.push_back(r);
    }
  }
  if (opt.keep_all) res.all = std::move(all);
  return res;
}

}  // namespace manypoints
