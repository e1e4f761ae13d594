#include <gtest/gtest.h>

#include <bitset>
#include <map>
#include <random>
#include <set>

#include "golden.hpp"
#include "toy_group.hpp"
#include "manypoints/cft.hpp"

using namespace manypoints;
using toy::Inv;
using toy::Set;
using toy::Toy;

namespace {

void all_invariant_chains(int64_t limit, Inv& cur, std::vector<Inv>& out) {
  int64_t prod = 1;
  for (auto x : cur) prod *= x;
  out.push_back(cur);
  const int64_t last = cur.empty() ? 1 : cur.back();
  for (int64_t m = last == 1 ? 2 : last; prod * m <= limit; m += last == 1 ? 1 : last) {
    cur.push_back(m);
    all_invariant_chains(limit, cur, out);
    cur.pop_back();
  }
}

Set elements_of(const Toy& A, const Subgroup& G) {
  Set s;
  for (int e = 0; e < A.n; ++e) s[e] = G.contains(A.coords(e));
  return s;
}

}  // namespace

TEST(GroupStructure, SyntheticGroups) {
  for (const Inv& inv : std::vector<Inv>{{903}, {3, 6, 42}, {2, 2}, {2, 4, 8}, {6, 6}, {3, 3, 3, 12, 12}, {}}) {
    Toy A(inv);
    // present the group in a scrambled element order
    std::vector<int> perm(A.n), back(A.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), std::mt19937(9));
    for (int i = 0; i < A.n; ++i) back[perm[i]] = i;
    auto add = [&](int a, int b) { return back[A.add(perm[a], perm[b])]; };
    GroupStructure gs = group_structure(A.n, back[0], add);
    EXPECT_EQ(gs.invariants, inv);
    EXPECT_EQ(torsion_invariant_factors(A.n, back[0], add), inv);
    std::mt19937 rng(1);
    for (int it = 0; it < 200; ++it) {
      int a = static_cast<int>(rng() % A.n), b = static_cast<int>(rng() % A.n);
      EXPECT_EQ(gs.add_coordinates(gs.coordinates(a), gs.coordinates(b)),
                std::vector<int64_t>(gs.coordinates(add(a, b)).begin(), gs.coordinates(add(a, b)).end()));
    }
    std::set<std::vector<int64_t>> distinct;
    for (int e = 0; e < A.n; ++e) distinct.insert({gs.coordinates(e).begin(), gs.coordinates(e).end()});
    EXPECT_EQ(static_cast<int>(distinct.size()), A.n);
    for (int i = 0; i < gs.rank(); ++i) {
      auto c = gs.coordinates(gs.basis[i]);
      for (int j = 0; j < gs.rank(); ++j) EXPECT_EQ(c[j], i == j ? 1 : 0);
    }
  }
}

TEST(GroupStructure, WorkedCurves) {
  const std::vector<std::pair<std::string, Inv>> cases = {
      {golden::kCurveA, {903}}, {golden::kCurveB, {3, 6, 42}}, {golden::kCurveC, {3, 3, 3, 12, 12}}};
  for (const auto& [line, inv] : cases) {
    auto a = analyze_curve(parse_curve(line));
    EXPECT_EQ(a.structure.invariants, inv) << line;
    EXPECT_EQ(a.class_number(), a.group->size());
  }
}

TEST(Subgroups, SmallExamples) {
  auto z903 = enumerate_subgroups({903}, 7);
  ASSERT_EQ(z903.size(), 1u);
  EXPECT_EQ(z903[0].order(), 129);
  EXPECT_TRUE(z903[0].contains(std::vector<int64_t>{7}));
  EXPECT_FALSE(z903[0].contains(std::vector<int64_t>{1}));
  EXPECT_TRUE(z903[0].contains(std::vector<int64_t>{0}));
  EXPECT_EQ(enumerate_subgroups({2, 2}, 2).size(), 3u);
  EXPECT_TRUE(enumerate_subgroups({903}, 2).empty());
  EXPECT_THROW(z903[0].contains(std::vector<int64_t>{1, 2}), Error);
  EXPECT_EQ(enumerate_subgroups({3, 6, 42}, 4).size(), 1u);
  for (int64_t n : {1, 12, 903, 1000})
    for (int64_t d = 1; d <= 30; ++d) EXPECT_EQ(enumerate_subgroups({n}, d).size(), n % d == 0 ? 1u : 0u);
}

TEST(Subgroups, MatchBruteForceOnAllGroupsUpTo200) {
  std::vector<Inv> chains;
  Inv cur;
  all_invariant_chains(200, cur, chains);
  ASSERT_GT(chains.size(), 300u);
  for (const auto& inv : chains) {
    Toy A(inv);
    auto oracle = A.all_subgroups();
    std::set<std::string> found;
    for (int64_t d = 1; d <= A.n; ++d) {
      if (A.n % d != 0) continue;
      auto subs = enumerate_subgroups(inv, d);
      for (const auto& G : subs) {
        EXPECT_EQ(G.index(), d);
        Set s = elements_of(A, G);
        EXPECT_EQ(static_cast<int64_t>(s.count()), A.n / d);
        EXPECT_TRUE(oracle.count(s.to_string())) << invariants_to_string(inv) << " " << G.to_string();
        EXPECT_TRUE(found.insert(s.to_string()).second) << "duplicate " << G.to_string();
      }
    }
    EXPECT_EQ(found.size(), oracle.size()) << invariants_to_string(inv);
  }
}

TEST(Subgroups, GeneratedSubgroupsMatchClosure) {
  std::mt19937 rng(21);
  EXPECT_EQ(subgroup_from_generators({903}, {{7}}).index(), 7);
  EXPECT_EQ(subgroup_from_generators({903}, {{0}}).index(), 903);
  for (const Inv& inv : std::vector<Inv>{{2, 4, 8}, {6, 36}, {5, 25}, {2, 2, 2, 6}, {240}}) {
    Toy A(inv);
    for (int it = 0; it < 30; ++it) {
      std::vector<std::vector<int64_t>> gens;
      Set s;
      s[0] = true;
      const int k = static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i) {
        int g = static_cast<int>(rng() % A.n);
        gens.push_back(A.coords(g));
        s = A.closure(s, g);
      }
      auto G = subgroup_from_generators(inv, gens);
      EXPECT_EQ(elements_of(A, G), s);
      EXPECT_EQ(G.index() * static_cast<int64_t>(s.count()), A.n);
      auto same = enumerate_subgroups(inv, G.index());
      EXPECT_TRUE(std::binary_search(same.begin(), same.end(), G));
    }
  }
}

TEST(Subgroups, ReadingsOfTheF7Vector) {
  // componentwise: 1*(Z/3) + 2*(Z/6) + 2*(Z/42), index 4
  auto comp = subgroup_from_generators({3, 6, 42}, {{1, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  EXPECT_EQ(comp.index(), 4);
  EXPECT_EQ(comp, multiple_subgroup({3, 6, 42}, 2));
  // cyclic: <(1,2,2)> has order 21
  auto cyc = subgroup_from_generators({3, 6, 42}, {{1, 2, 2}});
  EXPECT_EQ(cyc.order(), 21);
  EXPECT_EQ(cyc.index(), 36);
}
