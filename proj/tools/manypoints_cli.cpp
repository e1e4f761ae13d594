#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "manypoints/manypoints.hpp"

namespace mp = manypoints;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kMath = 2 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(const mp::Error& e) { return e.kind() == mp::ErrorKind::Parse ? kUsage : kMath; }

std::string read_curve_arg(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw IoError("cannot open " + arg.substr(1));
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] != '#') return line;
  }
  throw IoError("no curve in " + arg.substr(1));
}

int run_inspect(const std::string& curve_arg, const std::string& format) {
  mp::Curve c = mp::parse_curve(read_curve_arg(curve_arg));
  mp::require_smooth(c);
  mp::CurveAnalysis a = mp::analyze_curve(c);
  const auto rational = a.rational_places();
  const int O = rational.at(0);
  if (format == "json") {
    json j;
    j["curve"] = c.id().to_string();
    j["q"] = c.p();
    j["genus"] = c.genus();
    json pts = json::array();
    for (int pl : rational) pts.push_back(a.places()[pl].rep.to_string());
    j["points"] = pts.size();
    j["rational_points"] = pts;
    j["counts"] = a.counts;
    j["l_polynomial"] = a.lpoly().coeffs;
    j["class_number"] = a.class_number();
    j["invariant_factors"] = a.structure.invariants;
    j["base_point"] = a.places()[O].rep.to_string();
    json pc = json::array();
    for (int pl : rational)
      pc.push_back({{"point", a.places()[pl].rep.to_string()}, {"coordinates", a.point_class_coordinates(pl, O)}});
    j["point_classes"] = pc;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "curve            " << c.id().to_string() << '\n';
    std::cout << "rational points  " << rational.size() << '\n';
    for (int pl : rational) std::cout << "  " << a.places()[pl].rep.to_string() << '\n';
    std::cout << "N1 N2 N3         " << a.counts[0] << ' ' << a.counts[1] << ' ' << a.counts[2] << '\n';
    std::cout << "L(T)             ";
    for (size_t i = 0; i < a.lpoly().coeffs.size(); ++i) std::cout << (i ? " " : "") << a.lpoly().coeffs[i];
    std::cout << '\n';
    std::cout << "class number     " << a.class_number() << '\n';
    std::cout << "structure        " << mp::invariants_to_string(a.structure.invariants) << '\n';
    std::cout << "classes [P - O], O = " << a.places()[O].rep.to_string() << '\n';
    for (int pl : rational) {
      std::cout << "  " << std::left << std::setw(14) << a.places()[pl].rep.to_string() << " (";
      auto v = a.point_class_coordinates(pl, O);
      for (size_t i = 0; i < v.size(); ++i) std::cout << (i ? "," : "") << v[i];
      std::cout << ")\n";
    }
  }
  return kOk;
}

struct SearchArgs {
  std::string curves, bounds, out;
  int min_genus = 3, max_genus = 50;
  bool all = false;
  unsigned threads = 0;
};

int run_search(const SearchArgs& s) {
  std::ifstream cin_(s.curves);
  if (!cin_) throw IoError("cannot open " + s.curves);
  std::ifstream bin(s.bounds);
  if (!bin) throw IoError("cannot open " + s.bounds);
  if (s.min_genus > s.max_genus) throw IoError("--min-genus exceeds --max-genus");
  auto curves = mp::parse_curve_list(cin_);
  auto table = mp::load_bounds(bin);

  mp::SearchOptions opt;
  opt.min_genus = s.min_genus;
  opt.max_genus = s.max_genus;
  opt.keep_all = s.all;
  opt.threads = s.threads ? s.threads : std::max(1u, std::thread::hardware_concurrency());
  auto res = mp::search(curves, table, opt);

  std::vector<mp::ResultRow> rows;
  for (const auto& r : s.all ? res.all : res.best) rows.push_back(r.row());
  std::ofstream out(s.out);
  if (!out) throw IoError("cannot write " + s.out);
  mp::emit_results_csv(rows, out);
  out.close();
  if (!out) throw IoError("failed writing " + s.out);

  std::cout << "curves analyzed: " << res.curves_analyzed << " of " << curves.size() << '\n';
  for (const auto& f : res.failures) std::cout << "skipped " << f.curve << ": " << f.message << '\n';
  std::vector<mp::ResultRow> best;
  for (const auto& r : res.best) best.push_back(r.row());
  std::cout << "best records per (q, genus): " << best.size() << '\n';
  if (!best.empty()) mp::emit_results_table(best, std::cout);
  std::vector<mp::ResultRow> improved;
  for (const auto& r : best)
    if (r.improved != mp::Improvement::No) improved.push_back(r);
  if (improved.empty()) {
    std::cout << "no improvements over the known lower bounds\n";
  } else {
    std::cout << "improvements: " << improved.size() << '\n';
    for (const auto& r : improved)
      std::cout << "  F" << r.q << " g=" << r.genus << " N=" << r.points << " ("
                << (r.known_lower ? "previous " + std::to_string(*r.known_lower) : std::string("new")) << ") from "
                << r.curve_id << " O=" << r.base_point << " G=" << r.subgroup_hnf << '\n';
  }
  return kOk;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

int run_bounds(int64_t q, int g, const std::string& format) {
  if (q < 2 || g < 0) throw mp::Error(mp::ErrorKind::InvalidInput, "need q >= 2 and g >= 0");
  auto [lo, hi] = mp::weil_interval(static_cast<double>(q), g);
  const double ih = mp::ihara_bound(static_cast<double>(q), g);
  if (format == "json") {
    json j;
    j["q"] = q;
    j["g"] = g;
    j["weil_lower"] = lo;
    j["weil_upper"] = hi;
    j["ihara"] = ih;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "weil_upper " << fixed(hi, 4) << "\nihara      " << fixed(ih, 4) << '\n';
  }
  return kOk;
}

json cover_json(const mp::serre::CoverSummary& c) { return {{"genus", c.genus}, {"points", c.points}}; }

int run_serre() {
  auto r = mp::serre::run_demo();
  json j;
  j["phi_ok"] = r.phi_ok;
  j["D1_principal"] = r.d1_principal;
  j["D2_principal"] = r.d2_principal;
  j["f1"] = r.f1.to_string();
  j["f2"] = r.f2.to_string();
  j["C1"] = cover_json(r.c1);
  j["C2"] = cover_json(r.c2);
  j["fibre_product"] = cover_json(r.fibre);
  std::cout << j.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curves with many points via unramified abelian covers"};
  app.require_subcommand(1, 1);

  std::string curve_arg, format = "json";
  auto* inspect = app.add_subcommand("inspect", "points, zeta data and class group of one curve");
  inspect->add_option("--curve", curve_arg, "curve line, or @file")->required();
  inspect->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "search covers of every curve in a list");
  search->add_option("--curves", sa.curves)->required();
  search->add_option("--bounds", sa.bounds)->required();
  search->add_option("--min-genus", sa.min_genus)->required();
  search->add_option("--max-genus", sa.max_genus)->required();
  search->add_option("--out", sa.out)->required();
  search->add_flag("--all-records", sa.all, "write every record instead of the best per (q, genus)");
  search->add_option("--threads", sa.threads);

  int64_t q = 0;
  int g = 0;
  std::string bformat = "json";
  auto* bounds = app.add_subcommand("bounds", "Weil and Ihara upper bounds");
  bounds->add_option("--q", q)->required();
  bounds->add_option("--g", g)->required();
  bounds->add_option("--format", bformat)->check(CLI::IsMember({"json", "text"}));

  auto* serre = app.add_subcommand("serre-demo", "Artin-Schreier covers of y^2 + y = x^3 + x over F_2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*inspect) return run_inspect(curve_arg, format);
    if (*search) return run_search(sa);
    if (*bounds) return run_bounds(q, g, bformat);
    if (*serre) return run_serre();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const mp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
