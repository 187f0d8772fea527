#include "cli.hpp"

#include "staircase/diagonal_stats.hpp"
#include "staircase/rational.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace staircase::cli {

namespace {

namespace fs = std::filesystem;

struct Step {
  std::string artifact;
  std::vector<std::string> args;
};

std::vector<Step> bundle_steps() {
  return {
      {"enumerate", {"enumerate", "--count-only", "--n", "1..8"}},
      {"verify-partition", {"verify-partition", "--n", "1..7", "--grid", "default"}},
      {"marginals", {"marginals", "--n", "1..7", "--grid", "default", "--check"}},
      {"subtableau-check", {"subtableau-check", "--n", "1..6", "--grid", "default"}},
      {"lemma-la", {"lemma-la", "--r", "1..4", "--m", "1..14"}},
      {"moments", {"moments", "--n", "1..7", "--k", "2..3", "--r", "1..3", "--check"}},
      {"tv", {"tv", "--k", "2", "--n-range", "4..10"}},
      {"theorem4",
       {"theorem4", "--k", "2", "--n-range", "6..10", "--tuple", "1,3", "--tuple", "1,5", "--tuple",
        "2,4", "--tuple", "3,5", "--tuple", "1,2", "--tuple", "2,3", "--tuple", "4,5"}},
      {"involution-check", {"involution-check", "--n", "1..7", "--grid", "default"}},
      {"structure", {"structure", "--n", "3..6", "--k", "2..5", "--check", "lemma3"}},
      {"c-extract", {"c-extract", "--k", "2..3", "--n-range", "4..9", "--held-out", "10"}},
      {"sample-exact",
       {"sample", "--mode", "exact", "--n", "5", "--count", "100000", "--check", "--label",
        "sample-exact"}},
      {"sample-chain",
       {"sample", "--mode", "chain", "--n", "7", "--stat", "alpha-count:2", "--count", "100000",
        "--burn-in", "20000", "--thin", "200", "--check", "--label", "sample-chain"}},
      {"move-graph", {"move-graph", "--n", "1..5"}},
  };
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Bundle {
 public:
  explicit Bundle(fs::path dir) : dir_(std::move(dir)) {}

  /// Loads <name>.csv and checks it against its manifest checksum.
  const Table& table(const std::string& name) {
    if (auto it = tables_.find(name); it != tables_.end()) return it->second;
    const auto csv = dir_ / (name + ".csv");
    const auto manifest = dir_ / (name + ".manifest.json");
    if (!fs::exists(csv)) throw std::runtime_error("missing artifact " + csv.filename().string());
    if (!fs::exists(manifest)) {
      throw std::runtime_error("missing manifest " + manifest.filename().string());
    }
    const auto text = slurp(csv);
    const auto m = nlohmann::json::parse(slurp(manifest));
    const std::string recorded = m.at("outputs").at(0).at("sha256");
    if (recorded != sha256_hex(text)) {
      throw std::runtime_error(csv.filename().string() + " does not match its manifest checksum");
    }
    return tables_.emplace(name, parse_csv(text)).first->second;
  }

 private:
  fs::path dir_;
  std::map<std::string, Table> tables_;
};

bool all_true(const Table& t, const std::string& col) {
  const auto c = t.column(col);
  for (const auto& r : t.rows) {
    if (r[c] != "true") return false;
  }
  return !t.rows.empty();
}

std::size_t count_true(const Table& t, const std::string& col) {
  const auto c = t.column(col);
  std::size_t n = 0;
  for (const auto& r : t.rows) n += r[c] == "true";
  return n;
}

std::string rows_text(const Table& t) { return std::to_string(t.rows.size()) + " rows"; }

Verdict c1(Bundle& b) {
  const auto& t = b.table("enumerate");
  const auto cn = t.column("n"), cc = t.column("count");
  std::string counts;
  bool ok = all_true(t, "equal");
  std::set<int> seen;
  for (const auto& r : t.rows) {
    seen.insert(std::stoi(r[cn]));
    counts += (counts.empty() ? "" : " ") + r[cc];
  }
  for (int n = 1; n <= 8; ++n) ok = ok && seen.contains(n);
  return {ok, "counts " + counts};
}

Verdict c2(Bundle& b) {
  const auto& t = b.table("verify-partition");
  return {all_true(t, "equal") && t.rows.size() >= 35,
          std::to_string(count_true(t, "equal")) + "/" + rows_text(t) + " exact"};
}

Verdict c3(Bundle& b) {
  const auto& t = b.table("marginals");
  bool spot_a = false, spot_b = false;
  const auto cn = t.column("n"), ck = t.column("k"), cj = t.column("j"), ca = t.column("a"),
             cb = t.column("b"), cs = t.column("symbol"), cf = t.column("closed_form"),
             cbf = t.column("brute_force");
  for (const auto& r : t.rows) {
    if (r[cn] == "4" && r[ck] == "2" && r[cj] == "1" && r[ca] == "1" && r[cb] == "1") {
      if (r[cs] == "alpha") spot_a = r[cf] == "1/20" && r[cbf] == "1/20";
      if (r[cs] == "beta") spot_b = r[cf] == "3/20" && r[cbf] == "3/20";
    }
  }
  return {all_true(t, "equal") && spot_a && spot_b,
          std::to_string(count_true(t, "equal")) + "/" + rows_text(t) +
              " exact; spot 1/20 " + bool_text(spot_a) + ", 3/20 " + bool_text(spot_b)};
}

Verdict c4(Bundle& b) {
  const auto& t = b.table("subtableau-check");
  return {all_true(t, "ok"), std::to_string(count_true(t, "ok")) + "/" + rows_text(t) +
                                 " with zero discrepancy"};
}

Verdict c5(Bundle& b) {
  const auto& t = b.table("lemma-la");
  bool spot = false;
  for (const auto& r : t.rows) {
    if (r[t.column("r")] == "2" && r[t.column("m")] == "4") {
      spot = r[t.column("lhs")] == "15" && r[t.column("rhs")] == "15";
    }
  }
  return {all_true(t, "equal") && spot && t.rows.size() >= 56,
          std::to_string(count_true(t, "equal")) + "/" + rows_text(t) + " equal; (2,4) -> 15 " +
              bool_text(spot)};
}

Verdict c6(Bundle& b) {
  const auto& t = b.table("moments");
  return {all_true(t, "equal"), std::to_string(count_true(t, "equal")) + "/" + rows_text(t) +
                                    " routes agree"};
}

std::vector<std::pair<int, double>> tv_series(const Table& t, const std::string& col, int lo) {
  std::vector<std::pair<int, double>> s;
  for (const auto& r : t.rows) {
    const int n = std::stoi(r[t.column("n")]);
    if (n >= lo) s.emplace_back(n, std::stod(r[t.column(col)]));
  }
  return s;
}

Verdict c7(Bundle& b) {
  const auto& t = b.table("tv");
  bool means = true;
  int mean_rows = 0;
  for (const auto& r : t.rows) {
    const int n = std::stoi(r[t.column("n")]);
    if (n < 4 || n > 10) continue;
    ++mean_rows;
    means = means && parse_rational(r[t.column("mean")]) == Rational(n - 1, 2 * (n + 1));
  }
  const auto s = tv_series(t, "tv_poisson", 5);
  std::vector<double> v;
  std::string detail;
  for (const auto& [n, x] : s) {
    v.push_back(x);
    std::ostringstream o;
    o << " n" << n << "=" << x;
    detail += o.str();
  }
  return {means && mean_rows == 7 && s.size() == 6 && strictly_decreasing(v),
          "means exact " + bool_text(means) + "; tv" + detail};
}

Verdict c8(Bundle& b) {
  const auto& t = b.table("theorem4");
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> series;
  std::map<std::string, bool> gap;
  for (const auto& r : t.rows) {
    const auto name = r[t.column("tuple")];
    series[name].first.push_back(std::stod(r[t.column("n")]));
    series[name].second.push_back(std::stod(r[t.column("scaled")]));
    gap[name] = r[t.column("gap_ok")] == "true";
  }
  bool ok = !series.empty();
  std::string detail;
  for (const auto& [name, s] : series) {
    const auto fit = loglog_slope(s.first, s.second);
    const bool pass = fit.all_zero || (fit.slope && *fit.slope <= 0.3);
    ok = ok && pass;
    std::ostringstream o;
    o << " " << name << (gap[name] ? "(gap)" : "(close)") << ":";
    if (fit.all_zero) {
      o << "zero";
    } else if (fit.slope) {
      o << "slope " << *fit.slope;
    } else {
      o << "undefined";
    }
    detail += o.str();
  }
  return {ok, detail.empty() ? "no rows" : detail.substr(1)};
}

Verdict c9(Bundle& b) {
  const auto& t = b.table("tv");
  const auto s = tv_series(t, "independence_gap", 5);
  std::vector<double> v;
  std::string detail;
  for (const auto& [n, x] : s) {
    v.push_back(x);
    std::ostringstream o;
    o << " n" << n << "=" << x;
    detail += o.str();
  }
  return {s.size() == 6 && strictly_decreasing(v), "gap" + detail};
}

Verdict c10(Bundle& b) {
  const auto& t = b.table("involution-check");
  return {all_true(t, "equal"), std::to_string(count_true(t, "equal")) + "/" + rows_text(t) +
                                    " duality checks exact"};
}

Verdict c11(Bundle& b) {
  const auto& t = b.table("structure");
  std::uint64_t cases = 0, violations = 0;
  for (const auto& r : t.rows) {
    cases += std::stoull(r[t.column("cases")]);
    violations += std::stoull(r[t.column("violations")]);
  }
  return {!t.rows.empty() && violations == 0,
          std::to_string(violations) + " violations over " + std::to_string(cases) + " cases"};
}

Verdict c12(Bundle& b) {
  const auto& t = b.table("c-extract");
  std::map<std::string, std::string> tables;
  bool ok = !t.rows.empty();
  for (const auto& r : t.rows) {
    for (const char* col : {"consistent", "subset_stable", "integral", "nonnegative",
                            "unit_constant", "held_out_equal"}) {
      ok = ok && r[t.column(col)] == "true";
    }
    auto& s = tables[r[t.column("k")]];
    s += (s.empty() ? "" : ",") + r[t.column("coefficient")];
  }
  ok = ok && tables.contains("2") && tables.contains("3");
  std::string detail;
  for (const auto& [k, s] : tables) detail += " C_" + k + "={" + s + "}";
  return {ok, detail.empty() ? "no rows" : detail.substr(1)};
}

Verdict c13(Bundle& b) {
  const auto& ex = b.table("sample-exact");
  const auto& ch = b.table("sample-chain");
  const auto& mg = b.table("move-graph");
  const bool conn = all_true(mg, "connected") && mg.rows.size() >= 5;
  const auto p1 = ex.rows.at(0)[ex.column("p_value")];
  const auto p2 = ch.rows.at(0)[ch.column("p_value")];
  const bool ok = std::stod(p1) > 1e-3 && std::stod(p2) > 1e-3 && conn &&
                  ex.rows.at(0)[ex.column("n")] == "5" && ch.rows.at(0)[ch.column("n")] == "7";
  return {ok, "exact p=" + p1 + ", chain p=" + p2 + ", move graph connected " + bool_text(conn)};
}

}  // namespace

int run_bundle(const std::string& dir, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  int status = kOk;
  for (const auto& step : bundle_steps()) {
    auto args = step.args;
    args.insert(args.end(), {"--out", dir, "--seed", std::to_string(seed)});
    std::ostringstream sink;
    const int code = run(args, sink, err);
    out << step.artifact << ": exit " << code << "\n";
    if (code != kOk) status = kCheckFailed;
  }
  return status;
}

int run_report(const std::string& dir, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(dir)) {
    err << "error: bundle directory " << dir << " not found\n";
    return kUsage;
  }
  Bundle bundle{fs::path(dir)};
  const std::vector<std::pair<std::string, std::function<Verdict(Bundle&)>>> criteria{
      {"1 enumeration count", c1},        {"2 normalization", c2},
      {"3 marginal formulas", c3},        {"4 subtableau law", c4},
      {"5 gapped-sum identity", c5},      {"6 factorial-moment routes", c6},
      {"7 Poisson(1/2) mean and TV", c7}, {"8 joint alpha remainder order", c8},
      {"9 asymptotic independence", c9},  {"10 involution duality", c10},
      {"11 D-connected properties", c11}, {"12 C coefficient extraction", c12},
      {"13 sampler validation", c13},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check(bundle);
    } catch (const std::exception& e) {
      v = {false, e.what()};
    }
    failed += !v.pass;
    out << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << "\n";
  }
  out << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? kCheckFailed : kOk;
}

}  // namespace staircase::cli
