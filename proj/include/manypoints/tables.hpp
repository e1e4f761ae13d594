#pragma once

// Known-bounds tables for N_q(g) and the report formats for search results.

#include <cstdint>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "manypoints/error.hpp"

namespace manypoints {

struct BoundsEntry {
  int64_t q = 0;
  int genus = 0;
  std::optional<int64_t> lower;
  int64_t upper = 0;
  friend bool operator==(const BoundsEntry&, const BoundsEntry&) = default;
};

class BoundsTable {
 public:
  void insert(const BoundsEntry& e) {
    if (e.q < 2 || e.genus < 0) throw Error(ErrorKind::Validation, "bounds entry with q < 2 or negative genus");
    if (e.lower && *e.lower > e.upper) throw Error(ErrorKind::Validation, "bounds entry with lower > upper");
    entries_[{e.q, e.genus}] = e;
  }
  std::optional<BoundsEntry> find(int64_t q, int genus) const {
    auto it = entries_.find({q, genus});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }
  size_t size() const { return entries_.size(); }
  std::vector<BoundsEntry> entries() const {
    std::vector<BoundsEntry> out;
    for (const auto& [k, e] : entries_) out.push_back(e);
    return out;
  }
  friend bool operator==(const BoundsTable&, const BoundsTable&) = default;

 private:
  std::map<std::pair<int64_t, int>, BoundsEntry> entries_;
};

namespace detail {

inline std::vector<std::string> split_csv_plain(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

inline int64_t parse_int(const std::string& s, int row, const char* what) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::Parse, "row " + std::to_string(row) + ": bad " + what + " '" + s + "'");
}

}  // namespace detail

/// CSV with header `q,genus,lower,upper`; `#` lines are comments, an empty
/// lower bound means unknown.
inline BoundsTable load_bounds(std::istream& in) {
  BoundsTable t;
  std::string line;
  int row = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++row;
    std::string s = detail::trim(line);
    if (!s.empty() && s.back() == '\r') s.pop_back();
    if (s.empty() || s[0] == '#') continue;
    auto f = detail::split_csv_plain(s);
    for (auto& x : f) x = detail::trim(x);
    if (!header) {
      if (f != std::vector<std::string>{"q", "genus", "lower", "upper"})
        throw Error(ErrorKind::Parse, "row " + std::to_string(row) + ": expected header q,genus,lower,upper");
      header = true;
      continue;
    }
    if (f.size() != 4)
      throw Error(ErrorKind::Parse, "row " + std::to_string(row) + ": expected 4 fields, got " + std::to_string(f.size()));
    BoundsEntry e;
    e.q = detail::parse_int(f[0], row, "q");
    e.genus = static_cast<int>(detail::parse_int(f[1], row, "genus"));
    if (!f[2].empty()) e.lower = detail::parse_int(f[2], row, "lower bound");
    e.upper = detail::parse_int(f[3], row, "upper bound");
    try {
      t.insert(e);
    } catch (const Error& err) {
      throw Error(ErrorKind::Parse, "row " + std::to_string(row) + ": " + err.what());
    }
  }
  if (!header) throw Error(ErrorKind::Parse, "missing header q,genus,lower,upper");
  return t;
}

inline void emit_bounds(const BoundsTable& t, std::ostream& out) {
  out << "q,genus,lower,upper\n";
  for (const auto& e : t.entries())
    out << e.q << ',' << e.genus << ',' << (e.lower ? std::to_string(*e.lower) : "") << ',' << e.upper << '\n';
}

/// RFC 4180 quoting for fields that contain separators or quotes.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

inline std::vector<std::string> split_csv_quoted(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

enum class Improvement { No, Yes, New };

inline const char* to_string(Improvement i) {
  switch (i) {
    case Improvement::Yes: return "yes";
    case Improvement::New: return "new";
    default: return "no";
  }
}

/// Improvement of N points over a known entry; throws when N exceeds the
/// known upper bound, which no correct search can produce.
inline Improvement classify(int64_t q, int genus, int64_t points, const std::optional<BoundsEntry>& known) {
  if (!known) return points > 0 ? Improvement::New : Improvement::No;
  if (points > known->upper)
    throw Error(ErrorKind::Validation, "N = " + std::to_string(points) + " exceeds the known upper bound " +
                                           std::to_string(known->upper) + " for q = " + std::to_string(q) +
                                           ", g = " + std::to_string(genus));
  if (!known->lower) return points > 0 ? Improvement::New : Improvement::No;
  return points > *known->lower ? Improvement::Yes : Improvement::No;
}

/// One line of a results table.
struct ResultRow {
  int64_t q = 0;
  std::string curve_id;
  std::string base_point;
  std::string subgroup_hnf;
  int64_t index = 0;
  int genus = 0;
  int64_t points = 0;
  std::optional<int64_t> known_lower;
  std::optional<int64_t> known_upper;
  Improvement improved = Improvement::No;
};

inline constexpr const char* kResultsHeader =
    "q,curve_id,base_point,subgroup_hnf,index,genus,points,known_lower,known_upper,improved";

inline void emit_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kResultsHeader << '\n';
  for (const auto& r : rows) {
    out << r.q << ',' << csv_field(r.curve_id) << ',' << csv_field(r.base_point) << ',' << csv_field(r.subgroup_hnf)
        << ',' << r.index << ',' << r.genus << ',' << r.points << ','
        << (r.known_lower ? std::to_string(*r.known_lower) : "") << ','
        << (r.known_upper ? std::to_string(*r.known_upper) : "") << ',' << to_string(r.improved) << '\n';
  }
}

/// Fixed-width table with columns Field, Genus, Improvement, Previous Result.
inline void emit_results_table(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << std::left << std::setw(7) << "Field" << std::setw(7) << "Genus" << std::setw(13) << "Improvement"
      << "Previous Result" << '\n';
  for (const auto& r : rows) {
    std::string prev = (r.known_lower ? std::to_string(*r.known_lower) : std::string("unknown")) + "--" +
                       (r.known_upper ? std::to_string(*r.known_upper) : std::string("?"));
    std::string imp = std::to_string(r.points);
    if (r.improved != Improvement::No) imp += r.improved == Improvement::Yes ? " *" : " (new)";
    out << std::left << std::setw(7) << ("F" + std::to_string(r.q)) << std::setw(7) << r.genus << std::setw(13) << imp
        << prev << '\n';
  }
}

}  // namespace manypoints
