#include "cli.hpp"

#include "staircase/diagonal_stats.hpp"
#include "staircase/enumeration.hpp"
#include "staircase/measure.hpp"
#include "staircase/sampling.hpp"
#include "staircase/structure.hpp"
#include "staircase/tableau_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace staircase::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string float_text(const Float& x) {
  std::ostringstream s;
  s << std::setprecision(17) << x.convert_to<double>();
  return s.str();
}

std::string float_text(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Content content_from_text(const std::string& s) {
  if (s == "a" || s == "alpha") return Symbol::Alpha;
  if (s == "b" || s == "beta") return Symbol::Beta;
  if (s == "empty" || s == ".") return std::nullopt;
  throw UsageError("unknown content '" + s + "'");
}

std::string content_text(Content c) {
  if (!c) return "empty";
  return *c == Symbol::Alpha ? "alpha" : "beta";
}

Symbol symbol_from_text(const std::string& s) {
  const auto c = content_from_text(s);
  if (!c) throw UsageError("expected alpha or beta, got '" + s + "'");
  return *c;
}

EventSet read_events(const std::string& path) {
  const auto j = nlohmann::json::parse(read_file(path));
  if (!j.is_array()) throw UsageError("events file must hold a JSON list");
  EventSet events;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) throw UsageError("each event is [k, j, content]");
    events.push_back({e[0].get<int>(), e[1].get<int>(), content_from_text(e[2].get<std::string>())});
  }
  return events;
}

std::vector<std::vector<int>> read_tuples(const std::string& path) {
  const auto j = nlohmann::json::parse(read_file(path));
  std::vector<std::vector<int>> out;
  for (const auto& t : j) out.push_back(t.get<std::vector<int>>());
  return out;
}

std::vector<MixedIndex> parse_mixed(std::string_view text) {
  std::vector<MixedIndex> out;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.size() < 2) throw UsageError("mixed index '" + item + "' needs a column and a/b");
    const char s = item.back();
    item.pop_back();
    out.push_back({std::stoi(item), symbol_from_text(std::string(1, s))});
  }
  return out;
}

std::string tuple_text(const std::vector<MixedIndex>& t, bool symbols) {
  std::string s;
  for (const auto& x : t) {
    if (!s.empty()) s += '-';
    s += std::to_string(x.j);
    if (symbols) s += x.symbol == Symbol::Alpha ? 'a' : 'b';
  }
  return s;
}

struct Globals {
  std::string a = "1";
  std::string b = "1";
  std::optional<std::uint64_t> seed;
  std::string format;
  std::string out_dir;
  std::string grid;
  std::string label;
};

class Runner {
 public:
  Runner(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
      : args_(args), out_(out), err_(err) {}

  int run();

 private:
  Params params() const { return Params::parse(g_.a, g_.b); }
  std::vector<Params> grid() const {
    return g_.grid.empty() ? std::vector<Params>{params()} : parse_grid(g_.grid);
  }
  Sink sink() const {
    Sink s;
    s.argv = args_;
    if (!g_.out_dir.empty()) s.out_dir = g_.out_dir;
    s.seed = g_.seed;
    s.grid = grid();
    s.ranges = ranges_;
    s.out = &out_;
    return s;
  }
  void emit(const std::string& cmd, const Table& t) const { emit_text(cmd, "csv", t.csv()); }
  void emit_text(const std::string& cmd, const std::string& ext, const std::string& text) const {
    sink().emit(g_.label.empty() ? cmd : g_.label, ext, text);
  }
  std::uint64_t require_seed(const std::string& cmd) const {
    if (!g_.seed) throw UsageError(cmd + " is randomized and requires --seed");
    return *g_.seed;
  }

  int enumerate();
  int verify_partition();
  int marginals();
  int joint();
  int dist();
  int moments();
  int tv();
  int lemma_la();
  int theorem4();
  int theorem7();
  int structure();
  int c_extract();
  int sample();
  int move_graph();
  int involution_check();
  int subtableau_check();

  std::vector<std::string> args_;
  std::ostream& out_;
  std::ostream& err_;
  Globals g_;
  std::map<std::string, std::string> ranges_;

  // Per-command flags.
  std::string n_;
  std::string k_;
  std::string r_ = "1";
  std::string m_ = "1";
  std::string events_;
  std::string symbol_ = "alpha";
  std::string tuples_file_;
  std::vector<std::string> tuple_;
  std::string check_;
  std::string tableau_;
  std::string columns_;
  std::string mode_ = "exact";
  std::string stat_;
  std::string held_out_;
  bool count_only_ = false;
  bool pair_ = false;
  bool flag_check_ = false;
  int max_r_ = 2;
  std::size_t count_ = 1;
  int burn_in_ = 20000;
  int thin_ = 200;
  std::string bundle_;
  std::string lambda_ = "1/2";
};

int Runner::run() {
  CLI::App app{"Exact enumeration, measures and sampling for staircase tableaux", "staircase"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--a", g_.a, "a = 1/alpha, as p/q or an integer");
  app.add_option("--b", g_.b, "b = 1/beta, as p/q or an integer");
  app.add_option("--seed", g_.seed, "64-bit seed for randomized commands");
  app.add_option("--format", g_.format, "output format");
  app.add_option("--out", g_.out_dir, "write <command>.csv and a manifest into DIR");
  app.add_option("--grid", g_.grid, "parameter grid: default, or a:b;a:b;...");
  app.add_option("--label", g_.label, "artifact name used instead of the command name");
  app.set_version_flag("--version", version());

  std::function<int()> action;
  auto sub = [&](const char* name, const char* help, int (Runner::*fn)()) {
    auto* s = app.add_subcommand(name, help);
    s->callback([this, &action, fn] { action = [this, fn] { return (this->*fn)(); }; });
    return s;
  };

  auto* e = sub("enumerate", "list valid tableaux or count them", &Runner::enumerate);
  e->add_option("--n", n_, "size, or LO..HI with --count-only")->required();
  e->add_option("--events", events_, "JSON list of [k, j, a|b|empty]");
  e->add_flag("--count-only", count_only_);

  auto* vp = sub("verify-partition", "closed-form partition function vs brute force",
                 &Runner::verify_partition);
  vp->add_option("--n", n_, "LO..HI")->required();

  auto* mg = sub("marginals", "single-box marginals, closed form and brute force", &Runner::marginals);
  mg->add_option("--n", n_, "size or LO..HI")->required();
  mg->add_option("--k", k_, "diagonal (all when omitted)");
  mg->add_flag("--check", flag_check_, "exit 1 on any mismatch");

  auto* jt = sub("joint", "exact probability of a conjunction of events", &Runner::joint);
  jt->add_option("--n", n_)->required();
  jt->add_option("--events", events_)->required();

  auto* ds = sub("dist", "exact law of a diagonal symbol count", &Runner::dist);
  ds->add_option("--n", n_)->required();
  ds->add_option("--k", k_)->required();
  ds->add_option("--symbol", symbol_);
  ds->add_flag("--pair", pair_, "joint law of (alpha count, beta count)");

  auto* mo = sub("moments", "factorial moments against the Poisson(1/2) value", &Runner::moments);
  mo->add_option("--n", n_)->required();
  mo->add_option("--k", k_, "diagonal or LO..HI")->required();
  mo->add_option("--r", r_, "order or LO..HI");
  mo->add_option("--symbol", symbol_);
  mo->add_flag("--check", flag_check_, "also sum joint probabilities and compare exactly");

  auto* tvc = sub("tv", "total variation to Poisson and independence gap", &Runner::tv);
  tvc->add_option("--k", k_)->required();
  tvc->add_option("--n-range", n_)->required();
  tvc->add_option("--lambda", lambda_);
  tvc->add_flag("--check", flag_check_, "exit 1 unless both columns strictly decrease");

  auto* la = sub("lemma-la", "sum over gapped index sets vs closed form", &Runner::lemma_la);
  la->add_option("--r", r_)->required();
  la->add_option("--m", m_)->required();

  auto* t4 = sub("theorem4", "alpha joint probabilities vs the product formula", &Runner::theorem4);
  t4->add_option("--k", k_)->required();
  t4->add_option("--n-range", n_)->required();
  t4->add_option("--tuples", tuples_file_, "JSON list of column lists");
  t4->add_option("--tuple", tuple_, "columns, e.g. 1,3 (repeatable)");

  auto* t7 = sub("theorem7", "mixed joint probabilities vs the product formula", &Runner::theorem7);
  t7->add_option("--k", k_)->required();
  t7->add_option("--n-range", n_)->required();
  t7->add_option("--tuple", tuple_, "columns with symbols, e.g. 1a,4b (repeatable)")->required();

  auto* st = sub("structure", "D-connected symbols and D regions", &Runner::structure);
  st->add_option("--n", n_);
  st->add_option("--k", k_)->required();
  st->add_option("--events", events_, "restrict to tableaux with these diagonal-k events");
  st->add_option("--check", check_, "lemma3 or dregion")->required()->check(
      CLI::IsMember({"lemma3", "dregion"}));
  st->add_option("--tableau", tableau_, "grid file (dregion)");
  st->add_option("--columns", columns_, "diagonal-k positions, e.g. 1,4 (dregion)");
  st->add_option("--max-r", max_r_, "largest event tuple in the sweep");

  auto* ce = sub("c-extract", "solve the decomposition for C_{k,h}", &Runner::c_extract);
  ce->add_option("--k", k_, "k or LO..HI")->required();
  ce->add_option("--n-range", n_)->required();
  ce->add_option("--held-out", held_out_, "size outside the fitting range");

  auto* sa = sub("sample", "draw tableaux", &Runner::sample);
  sa->add_option("--n", n_)->required();
  sa->add_option("--mode", mode_)->check(CLI::IsMember({"exact", "chain"}));
  sa->add_option("--count", count_);
  sa->add_option("--stat", stat_, "alpha-count:K");
  sa->add_option("--burn-in", burn_in_);
  sa->add_option("--thin", thin_);
  sa->add_flag("--check", flag_check_, "chi-square fit to the exact law instead of samples");

  auto* mv = sub("move-graph", "connectivity of the chain's move graph", &Runner::move_graph);
  mv->add_option("--n", n_)->required();

  auto* ic = sub("involution-check", "measure-level duality under the involution",
                 &Runner::involution_check);
  ic->add_option("--n", n_)->required();

  auto* sc = sub("subtableau-check", "pushforward to subtableaux", &Runner::subtableau_check);
  sc->add_option("--n", n_)->required();

  auto* rp = app.add_subcommand("report", "acceptance summary over a bundle directory");
  rp->add_option("--bundle", bundle_)->required();
  rp->callback([&] { action = [&] { return run_report(bundle_, out_, err_); }; });

  auto* bd = app.add_subcommand("bundle", "write every report artifact into --out DIR");
  bd->callback([&] {
    action = [&] {
      if (g_.out_dir.empty()) throw UsageError("bundle requires --out DIR");
      return run_bundle(g_.out_dir, require_seed("bundle"), out_, err_);
    };
  });

  try {
    std::vector<std::string> reversed(args_.rbegin(), args_.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out_ << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out_ << version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  for (auto* s : app.get_subcommands()) {
    for (const auto* opt : s->get_options()) {
      if (opt->count() > 0 && opt->get_name().find("range") != std::string::npos) {
        ranges_[opt->get_name()] = opt->as<std::string>();
      }
    }
    for (const char* name : {"--n", "--k", "--r", "--m"}) {
      if (auto* opt = s->get_option_no_throw(name); opt && opt->count() > 0) {
        ranges_[name] = opt->as<std::string>();
      }
    }
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err_ << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err_ << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err_ << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err_ << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int Runner::enumerate() {
  const auto range = parse_range(n_);
  const auto events = events_.empty() ? EventSet{} : read_events(events_);
  if (count_only_) {
    Table t{{"n", "count", "expected", "equal"}, {}};
    bool ok = true;
    for (int n = range.lo; n <= range.hi; ++n) {
      const auto c = count_tableaux(n, events);
      t.add({std::to_string(n), std::to_string(c), factorial(n + 1).str(),
             events.empty() ? bool_text(Integer(c) == factorial(n + 1)) : ""});
      if (events.empty()) ok = ok && Integer(c) == factorial(n + 1);
    }
    emit("enumerate", t);
    return ok ? kOk : kCheckFailed;
  }
  if (range.lo != range.hi) throw UsageError("listing tableaux needs a single --n");
  const std::string fmt = g_.format.empty() ? "grid" : g_.format;
  if (fmt != "grid" && fmt != "json") throw UsageError("enumerate formats: grid, json");
  std::ostringstream s;
  bool first = true;
  for_each_tableau(range.lo, events, [&](const Tableau& t) {
    if (fmt == "grid") {
      if (!first) s << "\n";
      s << format_grid(t);
    } else {
      s << to_json(t).dump() << "\n";
    }
    first = false;
  });
  emit_text("enumerate", fmt == "grid" ? "txt" : "jsonl", s.str());
  return kOk;
}

int Runner::verify_partition() {
  const auto range = parse_range(n_);
  const auto ps = grid();
  Table t{{"n", "a", "b", "closed_form", "brute_force", "float", "sum_probability", "equal"}, {}};
  bool ok = true;
  for (int n = range.lo; n <= range.hi; ++n) {
    WeightPolynomial poly(n);
    for_each_tableau(n, [&](const Tableau& s) { poly.add(s); });
    for (const auto& p : ps) {
      const auto closed = normalized_partition(n, p);
      const auto brute = poly.weight(p);
      const auto total = poly.probability(p);
      const bool eq = closed == brute && total == 1;
      ok = ok && eq;
      t.add({std::to_string(n), to_string(p.a), to_string(p.b), to_string(closed), to_string(brute),
             float_text(to_float(closed)), to_string(total), bool_text(eq)});
    }
  }
  emit("verify-partition", t);
  return ok ? kOk : kCheckFailed;
}

int Runner::marginals() {
  const auto range = parse_range(n_);
  if (!k_.empty() && parse_range(k_).lo > range.hi) throw UsageError("--k exceeds every --n");
  const auto ps = grid();
  Table t{{"n", "k", "j", "a", "b", "symbol", "closed_form", "brute_force", "float", "equal"}, {}};
  bool ok = true;
  for (int n = range.lo; n <= range.hi; ++n) {
    const BoxCensus census(n);
    int k_lo = 1, k_hi = n;
    if (!k_.empty()) {
      const auto kr = parse_range(k_);
      k_lo = kr.lo;
      k_hi = std::min(kr.hi, n);
    }
    for (int k = k_lo; k <= k_hi; ++k) {
      for (const auto& p : ps) {
        for (int j = 1; j <= n - k + 1; ++j) {
          std::vector<Content> contents{Symbol::Alpha, Symbol::Beta};
          if (k > 1) contents.push_back(std::nullopt);
          for (Content c : contents) {
            const auto closed = marginal(n, p, {k, j, c});
            const auto brute = census.probability(box_at(n, {k, j}), c, p);
            ok = ok && closed == brute;
            t.add({std::to_string(n), std::to_string(k), std::to_string(j), to_string(p.a),
                   to_string(p.b), content_text(c), to_string(closed), to_string(brute),
                   float_text(to_float(closed)), bool_text(closed == brute)});
          }
        }
      }
    }
  }
  emit("marginals", t);
  return ok || !flag_check_ ? kOk : kCheckFailed;
}

int Runner::joint() {
  const int n = parse_range(n_).lo;
  const auto events = read_events(events_);
  Table t{{"n", "a", "b", "probability", "float"}, {}};
  for (const auto& p : grid()) {
    const auto q = joint_probability(n, p, events);
    t.add({std::to_string(n), to_string(p.a), to_string(p.b), to_string(q), float_text(to_float(q))});
  }
  emit("joint", t);
  return kOk;
}

int Runner::dist() {
  const int n = parse_range(n_).lo;
  const int k = parse_range(k_).lo;
  const auto p = params();
  Table t;
  if (pair_) {
    t.header = {"alpha_count", "beta_count", "probability", "float"};
    for (const auto& [key, q] : joint_count_distribution(n, p, k).mass) {
      t.add({std::to_string(key.first), std::to_string(key.second), to_string(q),
             float_text(to_float(q))});
    }
  } else {
    t.header = {"count", "probability", "float"};
    for (const auto& [c, q] : count_distribution(n, p, k, symbol_from_text(symbol_)).mass) {
      t.add({std::to_string(c), to_string(q), float_text(to_float(q))});
    }
  }
  emit("dist", t);
  return kOk;
}

int Runner::moments() {
  const auto nr = parse_range(n_);
  const auto kr = parse_range(k_);
  const auto rr = parse_range(r_);
  const Symbol s = symbol_from_text(symbol_);
  Table t{{"n", "k", "a", "b", "symbol", "r", "distribution", "via_joints", "target", "abs_error",
           "abs_error_float", "equal"},
          {}};
  bool ok = true;
  for (const auto& p : grid()) {
    for (int n = nr.lo; n <= nr.hi; ++n) {
      for (int k = kr.lo; k <= std::min(kr.hi, n); ++k) {
        const auto d = count_distribution(n, p, k, s);
        for (int r = rr.lo; r <= rr.hi; ++r) {
          const auto rep = moment_report(d, r);
          std::string joints, equal;
          if (flag_check_) {
            const auto v = factorial_moment_via_joints(n, p, k, s, r);
            joints = to_string(v);
            equal = bool_text(v == rep.exact_value);
            ok = ok && v == rep.exact_value;
          }
          t.add({std::to_string(n), std::to_string(k), to_string(p.a), to_string(p.b),
                 content_text(s), std::to_string(r), to_string(rep.exact_value), joints,
                 to_string(rep.target), to_string(rep.abs_error), float_text(to_float(rep.abs_error)),
                 equal});
        }
      }
    }
  }
  emit("moments", t);
  return ok ? kOk : kCheckFailed;
}

int Runner::tv() {
  const auto nr = parse_range(n_);
  const int k = parse_range(k_).lo;
  const auto lambda = parse_rational(lambda_);
  const auto p = params();
  Table t{{"n", "k", "a", "b", "mean", "tv_poisson", "independence_gap"}, {}};
  std::vector<double> tvs, gaps;
  for (int n = std::max(nr.lo, k); n <= nr.hi; ++n) {
    const auto pair = joint_count_distribution(n, p, k);
    const auto d = marginal_of(pair, Symbol::Alpha);
    const double tvp = tv_to_poisson(d, lambda).convert_to<double>();
    const double gap = to_float(independence_gap(pair)).convert_to<double>();
    tvs.push_back(tvp);
    gaps.push_back(gap);
    t.add({std::to_string(n), std::to_string(k), to_string(p.a), to_string(p.b),
           to_string(factorial_moment(d, 1)), float_text(tvp), float_text(gap)});
  }
  emit("tv", t);
  if (!flag_check_) return kOk;
  return strictly_decreasing(tvs) && strictly_decreasing(gaps) ? kOk : kCheckFailed;
}

int Runner::lemma_la() {
  const auto rr = parse_range(r_);
  const auto mr = parse_range(m_);
  Table t{{"r", "m", "lhs", "rhs", "equal"}, {}};
  bool ok = true;
  for (int r = rr.lo; r <= rr.hi; ++r) {
    for (int m = mr.lo; m <= mr.hi; ++m) {
      const auto res = lemma_la_check(r, m);
      ok = ok && res.equal;
      t.add({std::to_string(r), std::to_string(m), to_string(res.lhs), to_string(res.rhs),
             bool_text(res.equal)});
    }
  }
  emit("lemma-la", t);
  return ok ? kOk : kCheckFailed;
}

namespace {

Table remainder_table(const std::vector<RemainderRow>& rows, const Params& p, int k, bool symbols) {
  Table t{{"n", "k", "a", "b", "tuple", "gap_ok", "exact", "product", "delta", "scaled"}, {}};
  for (const auto& row : rows) {
    t.add({std::to_string(row.n), std::to_string(k), to_string(p.a), to_string(p.b),
           tuple_text(row.tuple, symbols), bool_text(row.gap_ok), to_string(row.exact),
           to_string(row.product), to_string(row.delta), float_text(row.scaled)});
  }
  return t;
}

void report_slopes(const std::vector<RemainderRow>& rows, bool symbols, std::ostream& err) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> series;
  for (const auto& row : rows) {
    auto& s = series[tuple_text(row.tuple, symbols)];
    s.first.push_back(row.n);
    s.second.push_back(row.scaled.convert_to<double>());
  }
  for (const auto& [name, s] : series) {
    if (s.first.size() < 2) continue;
    const auto fit = loglog_slope(s.first, s.second);
    err << "# tuple " << name << ": ";
    if (fit.all_zero) {
      err << "scaled value identically 0\n";
    } else if (fit.slope) {
      err << "log-log slope " << *fit.slope << "\n";
    } else {
      err << "slope undefined (some zero values)\n";
    }
  }
}

}  // namespace

int Runner::theorem4() {
  const auto nr = parse_range(n_);
  const int k = parse_range(k_).lo;
  auto tuples = tuples_file_.empty() ? std::vector<std::vector<int>>{} : read_tuples(tuples_file_);
  for (const auto& s : tuple_) tuples.push_back(parse_int_list(s));
  if (tuples.empty()) throw UsageError("theorem4 needs --tuples FILE or --tuple");
  const auto p = params();
  const auto rows = theorem4_error_scan(nr.lo, nr.hi, p, k, tuples);
  emit("theorem4", remainder_table(rows, p, k, false));
  report_slopes(rows, false, err_);
  return kOk;
}

int Runner::theorem7() {
  const auto nr = parse_range(n_);
  const int k = parse_range(k_).lo;
  std::vector<std::vector<MixedIndex>> tuples;
  for (const auto& s : tuple_) tuples.push_back(parse_mixed(s));
  const auto p = params();
  const auto rows = theorem7_error_scan(nr.lo, nr.hi, p, k, tuples);
  emit("theorem7", remainder_table(rows, p, k, true));
  report_slopes(rows, true, err_);
  return kOk;
}

int Runner::structure() {
  const auto kr = parse_range(k_);
  if (check_ == "dregion") {
    if (tableau_.empty() || columns_.empty()) {
      throw UsageError("--check dregion needs --tableau FILE and --columns");
    }
    const auto t = staircase::parse_grid(read_file(tableau_));
    const auto cols = parse_int_list(columns_);
    const DAnalysis an(t, kr.lo, cols);
    Table out{{"kind", "row", "col", "content"}, {}};
    auto put = [&](const char* kind, Box b) {
      out.add({kind, std::to_string(b.row), std::to_string(b.col), content_text(t.at(b))});
    };
    const auto region = an.d_region();
    for (Box b : region.boundary) put("boundary", b);
    for (Box b : region.interior) put("interior", b);
    for (Box b : an.d_connected()) put("d_connected", b);
    for (Box b : an.d_connected_by_paths()) put("path_d_connected", b);
    emit("structure", out);
    const auto rep = verify_lemma3(t, kr.lo, cols);
    err_ << "# m=" << an.m_stat().m << " hat_k=" << an.hat_k() << " d_connected=" << rep.d_connected
         << " bound=" << rep.bound << " lemma3=" << bool_text(rep.ok()) << "\n";
    return rep.ok() ? kOk : kCheckFailed;
  }

  if (n_.empty()) throw UsageError("--check lemma3 needs --n");
  const auto nr = parse_range(n_);
  Table out{{"n", "k", "cases", "closure_failures", "count_failures", "pairing_failures",
             "forced_failures", "involution_mismatches", "violations", "max_d_connected",
             "path_divergences"},
            {}};
  bool ok = true;
  for (int n = nr.lo; n <= nr.hi; ++n) {
    for (int k = std::max(kr.lo, 2); k <= std::min(kr.hi, n - 1); ++k) {
      Lemma3Sweep s;
      if (events_.empty()) {
        s = lemma3_sweep(n, k, max_r_);
      } else {
        const auto events = read_events(events_);
        std::vector<int> cols;
        for (const auto& e : events) {
          if (e.k != k || !e.content) throw UsageError("structure events must be diagonal-k symbols");
          cols.push_back(e.j);
        }
        std::sort(cols.begin(), cols.end());
        s.n = n;
        s.k = k;
        for_each_tableau(n, events, [&](const Tableau& t) {
          const auto rep = verify_lemma3(t, k, cols);
          ++s.cases;
          s.closure_failures += !rep.closure_ok;
          s.count_failures += !rep.count_ok;
          s.pairing_failures += !rep.pairing_ok;
          s.forced_failures += !rep.forced_ok;
          s.path_divergences += rep.path_divergence;
          s.max_d_connected = std::max(s.max_d_connected, rep.d_connected);
        });
      }
      ok = ok && s.violations() == 0;
      out.add({std::to_string(n), std::to_string(k), std::to_string(s.cases),
               std::to_string(s.closure_failures), std::to_string(s.count_failures),
               std::to_string(s.pairing_failures), std::to_string(s.forced_failures),
               std::to_string(s.involution_mismatches), std::to_string(s.violations()),
               std::to_string(s.max_d_connected), std::to_string(s.path_divergences)});
    }
  }
  emit("structure", out);
  return ok ? kOk : kCheckFailed;
}

int Runner::c_extract() {
  const auto kr = parse_range(k_);
  const auto nr = parse_range(n_);
  const auto ps = grid();
  Table t{{"k", "h", "coefficient", "direct", "agree", "rank", "equations", "consistent",
           "subset_stable", "integral", "nonnegative", "unit_constant", "held_out_n",
           "held_out_equal"},
          {}};
  bool ok = true;
  for (int k = kr.lo; k <= kr.hi; ++k) {
    std::vector<int> ns;
    for (int n = std::max(nr.lo, k + 2); n <= nr.hi; ++n) ns.push_back(n);
    const auto ex = extract_c_table(k, ps, ns);
    // Solve again on the first and last k sizes alone.
    bool stable = false;
    if (ex.table) {
      const std::vector<int> head(ns.begin(), ns.begin() + k);
      const std::vector<int> tail(ns.end() - k, ns.end());
      const auto e1 = extract_c_table(k, ps, head);
      const auto e2 = extract_c_table(k, ps, tail);
      stable = e1.solution == ex.solution && e2.solution == ex.solution;
    }
    const int held = held_out_.empty() ? ns.back() + 1 : parse_range(held_out_).lo;
    bool held_ok = false;
    if (ex.table) {
      held_ok = true;
      for (const auto& p : ps) held_ok = held_ok && held_out_check(*ex.table, held, p).equal;
    }
    const auto direct = direct_c_table(k);
    const bool agree = ex.table && *ex.table == direct;
    ok = ok && ex.ok() && stable && held_ok;
    if (!agree) err_ << "# k=" << k << ": direct count disagrees with the linear solve\n";
    for (int h = 0; h < ex.unknowns; ++h) {
      t.add({std::to_string(k), std::to_string(h),
             h < static_cast<int>(ex.solution.size()) ? to_string(ex.solution[h]) : "",
             direct.counts[h].str(), bool_text(agree), std::to_string(ex.rank),
             std::to_string(ex.equations), bool_text(ex.consistent), bool_text(stable),
             bool_text(ex.integral), bool_text(ex.nonnegative), bool_text(ex.unit_constant),
             std::to_string(held), bool_text(held_ok)});
    }
  }
  emit("c-extract", t);
  return ok ? kOk : kCheckFailed;
}

int Runner::sample() {
  const std::uint64_t seed = require_seed("sample");
  SamplerConfig cfg;
  cfg.n = parse_range(n_).lo;
  cfg.params = params();
  cfg.seed = seed;
  cfg.mode = mode_ == "chain" ? SamplerMode::Chain : SamplerMode::Exact;
  cfg.chain_burn_in = burn_in_;
  cfg.chain_thin = thin_;
  std::optional<int> stat_k;
  if (!stat_.empty()) {
    const std::string prefix = "alpha-count:";
    if (stat_.rfind(prefix, 0) != 0) throw UsageError("--stat must be alpha-count:K");
    stat_k = std::stoi(stat_.substr(prefix.size()));
    box_at(cfg.n, {*stat_k, 1});
  }
  const auto draws = staircase::sample(cfg, count_);

  if (flag_check_) {
    std::vector<std::uint64_t> observed;
    std::vector<Rational> probs;
    if (stat_k) {
      const auto law = count_distribution(cfg.n, cfg.params, *stat_k, Symbol::Alpha);
      const int top = law.mass.rbegin()->first;
      observed.assign(top + 1, 0);
      for (int c = 0; c <= top; ++c) probs.push_back(law.at(c));
      for (const auto& t : draws) {
        const int c = alpha_count(t, *stat_k);
        if (c > top) throw std::logic_error("sampled count outside the exact support");
        ++observed[c];
      }
    } else {
      const auto all = materialize(cfg.n);
      std::map<Tableau, std::size_t> index;
      for (std::size_t i = 0; i < all.size(); ++i) {
        index.emplace(all[i], i);
        probs.push_back(probability(all[i], cfg.params));
      }
      observed.assign(all.size(), 0);
      for (const auto& t : draws) ++observed[index.at(t)];
    }
    const auto chi = chi_square_gof(observed, probs);
    const bool pass = chi.p_value > 1e-3;
    Table t{{"mode", "n", "a", "b", "stat", "samples", "cells", "dof", "statistic", "p_value",
             "pass"},
            {}};
    t.add({mode_, std::to_string(cfg.n), to_string(cfg.params.a), to_string(cfg.params.b),
           stat_.empty() ? "tableau" : stat_, std::to_string(count_), std::to_string(chi.cells),
           std::to_string(chi.dof), float_text(chi.statistic), float_text(chi.p_value),
           bool_text(pass)});
    emit("sample", t);
    return pass ? kOk : kCheckFailed;
  }

  std::string fmt = g_.format.empty() ? (stat_k ? "csv" : "grid") : g_.format;
  std::ostringstream s;
  if (fmt == "csv") {
    Table t{{"index", "alpha_symbols", "beta_symbols", stat_k ? "alpha_count" : "grid"}, {}};
    for (std::size_t i = 0; i < draws.size(); ++i) {
      std::string last;
      if (stat_k) {
        last = std::to_string(alpha_count(draws[i], *stat_k));
      } else {
        last = format_grid(draws[i]);
        std::replace(last.begin(), last.end(), '\n', '/');
      }
      t.add({std::to_string(i), std::to_string(draws[i].count(Symbol::Alpha)),
             std::to_string(draws[i].count(Symbol::Beta)), last});
    }
    emit("sample", t);
    return kOk;
  }
  if (fmt == "grid") {
    for (std::size_t i = 0; i < draws.size(); ++i) s << (i ? "\n" : "") << format_grid(draws[i]);
  } else if (fmt == "json") {
    for (const auto& t : draws) s << to_json(t).dump() << "\n";
  } else {
    throw UsageError("sample formats: grid, json, csv");
  }
  emit_text("sample", fmt == "grid" ? "txt" : "jsonl", s.str());
  return kOk;
}

int Runner::move_graph() {
  const auto nr = parse_range(n_);
  Table t{{"n", "tableaux", "connected"}, {}};
  bool ok = true;
  for (int n = nr.lo; n <= nr.hi; ++n) {
    const bool c = move_graph_connected(n);
    ok = ok && c;
    t.add({std::to_string(n), std::to_string(count_tableaux(n)), bool_text(c)});
  }
  emit("move-graph", t);
  return ok ? kOk : kCheckFailed;
}

int Runner::involution_check() {
  const auto nr = parse_range(n_);
  const auto ps = grid();
  Table t{{"n", "k", "a", "b", "check", "equal"}, {}};
  bool ok = true;
  auto row = [&](int n, int k, const Params& p, const char* what, bool eq) {
    ok = ok && eq;
    t.add({std::to_string(n), std::to_string(k), to_string(p.a), to_string(p.b), what, bool_text(eq)});
  };
  for (int n = nr.lo; n <= nr.hi; ++n) {
    std::set<Tableau> all, images;
    bool valid = true;
    for_each_tableau(n, [&](const Tableau& s) {
      all.insert(s);
      const auto img = involution(s);
      valid = valid && is_valid(img) && involution(img) == s;
      images.insert(img);
    });
    row(n, 0, Params{}, "bijection", valid && all == images);
    const BoxCensus census(n);
    for (const auto& p : ps) {
      for (int k = 1; k <= n; ++k) {
        bool marg = true;
        for (int j = 1; j <= n - k + 1; ++j) {
          marg = marg && census.probability(box_at(n, {k, j}), Symbol::Alpha, p) ==
                             census.probability(box_at(n, {k, n - k - j + 2}), Symbol::Beta,
                                                p.swapped());
        }
        row(n, k, p, "box_duality", marg);
        row(n, k, p, "count_law_duality",
            count_distribution(n, p, k, Symbol::Beta) ==
                count_distribution(n, p.swapped(), k, Symbol::Alpha));
        row(n, k, p, "pair_law_duality",
            joint_count_distribution(n, p, k) ==
                swap_coordinates(joint_count_distribution(n, p.swapped(), k)));
      }
    }
  }
  emit("involution-check", t);
  return ok ? kOk : kCheckFailed;
}

int Runner::subtableau_check() {
  const auto nr = parse_range(n_);
  const auto ps = grid();
  Table t{{"n", "i", "j", "a", "b", "sub_size", "sub_a", "sub_b", "states", "max_discrepancy", "ok"},
          {}};
  bool ok = true;
  for (int n = nr.lo; n <= nr.hi; ++n) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; i + j <= n + 1; ++j) {
        const auto reps = subtableau_law_check(n, ps, i, j);
        for (std::size_t q = 0; q < reps.size(); ++q) {
          const auto& r = reps[q];
          ok = ok && r.ok();
          t.add({std::to_string(n), std::to_string(i), std::to_string(j), to_string(ps[q].a),
                 to_string(ps[q].b), std::to_string(r.sub_size), to_string(r.sub_params.a),
                 to_string(r.sub_params.b), std::to_string(r.states), to_string(r.max_discrepancy),
                 bool_text(r.ok())});
        }
      }
    }
  }
  emit("subtableau-check", t);
  return ok ? kOk : kCheckFailed;
}

}  // namespace

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string Table::csv() const {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += field(cells[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("no column '" + std::string(name) + "'");
}

Table parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> cur;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cur.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      cur.push_back(std::move(cell));
      cell.clear();
      lines.push_back(std::move(cur));
      cur.clear();
      any = false;
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV");
  if (any) {
    cur.push_back(std::move(cell));
    lines.push_back(std::move(cur));
  }
  if (lines.empty()) throw std::invalid_argument("empty CSV");
  Table t{lines.front(), {}};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != t.header.size()) {
      throw std::invalid_argument("CSV row " + std::to_string(i) + " has the wrong width");
    }
    t.rows.push_back(std::move(lines[i]));
  }
  return t;
}

Range parse_range(std::string_view text) {
  auto to_int = [&](std::string_view s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw UsageError("malformed range '" + std::string(text) + "'");
    }
    return std::stoi(std::string(s));
  };
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string_view::npos) {
    r.lo = r.hi = to_int(text);
  } else {
    r.lo = to_int(text.substr(0, dots));
    r.hi = to_int(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw UsageError("empty range '" + std::string(text) + "'");
  return r;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_range(item).lo);
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<Params> parse_grid(std::string_view text) {
  if (text == "default") return default_params_grid();
  std::vector<Params> out;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ';')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("grid entries are a:b");
    out.push_back(Params::parse(item.substr(0, colon), item.substr(colon + 1)));
  }
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream s;
  for (unsigned int i = 0; i < len; ++i) {
    s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return s.str();
}

std::string version() { return STAIRCASE_VERSION; }

void Sink::emit(const std::string& command, const std::string& extension,
                const std::string& payload) const {
  if (!out_dir) {
    *out << payload;
    return;
  }
  namespace fs = std::filesystem;
  fs::create_directories(*out_dir);
  const std::string name = command + "." + extension;
  {
    std::ofstream f(fs::path(*out_dir) / name, std::ios::binary);
    if (!f) throw UsageError("cannot write " + name);
    f << payload;
  }
  nlohmann::json params = nlohmann::json::array();
  for (const auto& p : grid) params.push_back({{"a", to_string(p.a)}, {"b", to_string(p.b)}});
  nlohmann::json m{{"command_line", argv},
                   {"command", command},
                   {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
                   {"params", params},
                   {"ranges", ranges},
                   {"version", version()},
                   {"outputs", {{{"file", name}, {"sha256", sha256_hex(payload)}}}}};
  std::ofstream f(fs::path(*out_dir) / (command + ".manifest.json"), std::ios::binary);
  f << m.dump(2) << "\n";
  *out << "wrote " << (fs::path(*out_dir) / name).string() << "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    Runner r(args, out, err);
    return r.run();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace staircase::cli
