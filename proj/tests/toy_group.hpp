#pragma once

// Brute-force model of Z/d_1 + ... + Z/d_r (order <= 256) for checking
// subgroup enumeration.

#include <bitset>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace toy {

using Inv = std::vector<int64_t>;
using Set = std::bitset<256>;

// Elements of Z/d_1 + ... + Z/d_r as mixed-radix integers.
struct Toy {
  Inv inv;
  int n = 1;
  explicit Toy(Inv d) : inv(std::move(d)) {
    for (auto x : inv) n *= static_cast<int>(x);
    build_table();
  }
  std::vector<int64_t> coords(int e) const {
    std::vector<int64_t> v(inv.size());
    for (size_t i = 0; i < inv.size(); ++i) {
      v[i] = e % inv[i];
      e /= static_cast<int>(inv[i]);
    }
    return v;
  }
  int index(const std::vector<int64_t>& v) const {
    int e = 0;
    for (size_t i = inv.size(); i-- > 0;) e = e * static_cast<int>(inv[i]) + static_cast<int>(((v[i] % inv[i]) + inv[i]) % inv[i]);
    return e;
  }
  std::vector<std::vector<int>> table;
  void build_table() {
    table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
      auto x = coords(a);
      for (int b = 0; b < n; ++b) {
        auto y = coords(b);
        for (size_t i = 0; i < x.size(); ++i) y[i] += x[i];
        table[a][b] = index(y);
      }
    }
  }
  int add(int a, int b) const { return table[a][b]; }
  // s must be a subgroup: s + <g> is the union of the cosets s + k g
  Set closure(const Set& s, int g) const {
    std::vector<int> elems;
    for (int e = 0; e < n; ++e)
      if (s[e]) elems.push_back(e);
    Set t = s;
    for (int x = g; !s[x]; x = add(x, g))
      for (int e : elems) t[add(e, x)] = true;
    return t;
  }
  // every subgroup, by repeated one-generator extension
  std::set<std::string> all_subgroups() const {
    Set zero;
    zero[0] = true;
    std::set<std::string> seen{zero.to_string()};
    std::vector<Set> todo{zero};
    while (!todo.empty()) {
      Set s = todo.back();
      todo.pop_back();
      for (int g = 0; g < n; ++g) {
        if (s[g]) continue;
        Set t = closure(s, g);
        if (seen.insert(t.to_string()).second) todo.push_back(t);
      }
    }
    return seen;
  }
};

}  // namespace toy
