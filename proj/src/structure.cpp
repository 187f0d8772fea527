#include "staircase/structure.hpp"

#include "staircase/enumeration.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

namespace staircase {

MStat compute_m(std::span<const int> j, int k) {
  if (j.empty()) throw std::invalid_argument("m-statistic of an empty index list");
  for (std::size_t l = 1; l < j.size(); ++l) {
    if (j[l] <= j[l - 1]) throw std::invalid_argument("column indices must be strictly increasing");
  }
  MStat s{static_cast<int>(j.size()), k, {j.begin(), j.end()}};
  for (std::size_t l = 0; l + 1 < j.size(); ++l) {
    if (j[l] <= j[l + 1] - k) {
      s.m = static_cast<int>(l) + 1;
      break;
    }
  }
  return s;
}

int hat_k(const MStat& s) { return s.k + s.j[s.m - 1] - s.j.front(); }

DAnalysis::DAnalysis(const Tableau& t, int k, std::span<const int> columns)
    : t_(t), n_(t.size()), k_(k), m_(compute_m(columns, k)) {
  if (!is_valid(t)) throw std::invalid_argument("structure analysis needs a valid tableau");
  for (int j : columns) {
    if (!t.at(DiagonalAddress{k, j})) {
      throw std::invalid_argument("no symbol at diagonal position " + std::to_string(j));
    }
  }
  for (int l = 0; l < m_.m; ++l) anchors_.push_back(box_at(n_, {k, columns[l]}));
  top_row_ = anchors_.back().row;
  left_col_ = anchors_.front().col;
}

bool DAnalysis::in_window(Box b) const noexcept {
  return t_.contains(b) && b.row >= top_row_ && b.col >= left_col_;
}

bool DAnalysis::is_candidate(Box b) const {
  if (!in_window(b) || !t_.at(b)) return false;
  const int d = diagonal_of(n_, b);
  return d != 1 && d != k_;
}

bool DAnalysis::touches_anchor(Box b) const {
  return std::any_of(anchors_.begin(), anchors_.end(),
                     [&](Box a) { return a.row == b.row || a.col == b.col; });
}

std::vector<Box> DAnalysis::ab_path(Box start) const {
  if (!is_candidate(start)) throw std::invalid_argument("path start is not an eligible symbol");
  std::vector<Box> path{start};
  std::set<Box> seen{start};
  Box cur = start;
  while (true) {
    for (Box a : anchors_) {
      if (a.row == cur.row || a.col == cur.col) {
        path.push_back(a);
        return path;
      }
    }
    std::optional<Box> next;
    if (t_.at(cur) == Symbol::Alpha) {
      for (int r = cur.row + 1; r + cur.col < n_ + 1; ++r) {
        if (t_.at(Box{r, cur.col}) == Symbol::Beta) {
          next = Box{r, cur.col};
          break;
        }
      }
    } else {
      for (int c = cur.col + 1; cur.row + c < n_ + 1; ++c) {
        if (t_.at(Box{cur.row, c}) == Symbol::Alpha) {
          next = Box{cur.row, c};
          break;
        }
      }
    }
    if (!next || !seen.insert(*next).second) return path;
    path.push_back(*next);
    cur = *next;
  }
}

bool DAnalysis::path_ends_on_d(Box start) const {
  const auto path = ab_path(start);
  return path.size() > 1 && std::find(anchors_.begin(), anchors_.end(), path.back()) != anchors_.end();
}

std::set<Box> DAnalysis::d_connected() const {
  std::set<Box> members;
  std::deque<Box> queue;
  std::vector<Box> candidates;
  for (int r = top_row_; r <= n_; ++r) {
    for (int c = left_col_; r + c <= n_ + 1; ++c) {
      if (is_candidate({r, c})) candidates.push_back({r, c});
    }
  }
  for (Box b : candidates) {
    if (touches_anchor(b)) {
      members.insert(b);
      queue.push_back(b);
    }
  }
  while (!queue.empty()) {
    const Box cur = queue.front();
    queue.pop_front();
    for (Box b : candidates) {
      if ((b.row == cur.row || b.col == cur.col) && members.insert(b).second) queue.push_back(b);
    }
  }
  return members;
}

std::set<Box> DAnalysis::d_connected_by_paths() const {
  std::set<Box> out;
  for (int r = top_row_; r <= n_; ++r) {
    for (int c = left_col_; r + c <= n_ + 1; ++c) {
      if (is_candidate({r, c}) && path_ends_on_d({r, c})) out.insert({r, c});
    }
  }
  return out;
}

DRegion DAnalysis::d_region() const {
  DRegion region;
  const int m = m_.m;
  std::vector<int> rows, cols;
  for (Box a : anchors_) {
    rows.push_back(a.row);
    cols.push_back(a.col);
  }
  for (int r = n_ - cols[0] + 1; r >= rows[0]; --r) region.boundary.push_back({r, cols[0]});
  for (int l = 0; l + 1 < m; ++l) {
    for (int c = cols[l] + 1; c <= cols[l + 1]; ++c) region.boundary.push_back({rows[l], c});
    for (int r = rows[l] - 1; r >= rows[l + 1]; --r) region.boundary.push_back({r, cols[l + 1]});
  }
  for (int c = cols[m - 1] + 1; c <= n_ + 1 - rows[m - 1]; ++c) {
    region.boundary.push_back({rows[m - 1], c});
  }

  for (int c = cols[0]; c <= n_ + 1 - top_row_; ++c) {
    int l = 0;
    while (l + 1 < m && cols[l + 1] <= c) ++l;
    int bottom;
    if (c == cols[l]) {
      bottom = l == 0 ? n_ + 1 - c : rows[l - 1];
    } else {
      bottom = rows[l];
    }
    for (int r = bottom + 1; r + c < n_ + 1; ++r) region.interior.push_back({r, c});
  }
  return region;
}

Lemma3Report verify_lemma3(const Tableau& t, int k, std::span<const int> columns) {
  const DAnalysis an(t, k, columns);
  const int n = t.size();
  const auto members = an.d_connected();
  Lemma3Report rep;
  rep.d_connected = members.size();
  rep.bound = an.hat_k() - an.m_stat().m - 1;
  rep.count_ok = static_cast<int>(members.size()) <= rep.bound;

  for (Box d : members) {
    for (int r = an.anchors().back().row; r <= n; ++r) {
      for (int c = an.anchors().front().col; r + c <= n + 1; ++c) {
        const Box b{r, c};
        if ((b.row == d.row || b.col == d.col) && an.is_candidate(b) && !members.contains(b)) {
          rep.closure_ok = false;
        }
      }
    }
  }

  std::set<Box> partners;
  for (Box d : members) {
    const bool beta = t.at(d) == Symbol::Beta;
    const Box partner = beta ? Box{d.row, n + 1 - d.row} : Box{n + 1 - d.col, d.col};
    const Content want = beta ? Content{Symbol::Alpha} : Content{Symbol::Beta};
    if (t.at(partner) != want || !an.in_window(partner) || !partners.insert(partner).second) {
      rep.pairing_ok = false;
    }
  }

  for (int j : columns) {
    const Box b = box_at(n, {k, j});
    if (t.at(Box{b.row, n + 1 - b.row}) != Symbol::Alpha ||
        t.at(Box{n + 1 - b.col, b.col}) != Symbol::Beta) {
      rep.forced_ok = false;
    }
  }

  const auto walked = an.d_connected_by_paths();
  for (int r = an.anchors().back().row; r <= n; ++r) {
    for (int c = an.anchors().front().col; r + c <= n + 1; ++c) {
      const Box b{r, c};
      if (an.is_candidate(b) && members.contains(b) != walked.contains(b)) ++rep.path_divergence;
    }
  }
  return rep;
}

Lemma3Sweep lemma3_sweep(int n, int k, int max_r) {
  if (k < 2 || k > n) throw std::out_of_range("sweep diagonal must satisfy 2 <= k <= n");
  Lemma3Sweep sweep{n, k};
  for_each_tableau(n, [&](const Tableau& t) {
    std::vector<int> occupied;
    for (int j = 1; j <= n - k + 1; ++j) {
      if (t.at(DiagonalAddress{k, j})) occupied.push_back(j);
    }
    const Tableau image = involution(t);
    std::vector<int> pick;
    std::function<void(std::size_t)> walk = [&](std::size_t from) {
      if (!pick.empty()) {
        const auto rep = verify_lemma3(t, k, pick);
        ++sweep.cases;
        sweep.closure_failures += !rep.closure_ok;
        sweep.count_failures += !rep.count_ok;
        sweep.pairing_failures += !rep.pairing_ok;
        sweep.forced_failures += !rep.forced_ok;
        sweep.path_divergences += rep.path_divergence;
        sweep.max_d_connected = std::max(sweep.max_d_connected, rep.d_connected);
        std::vector<int> mirrored;
        for (int j : pick) mirrored.push_back(n - k - j + 2);
        std::sort(mirrored.begin(), mirrored.end());
        if (verify_lemma3(image, k, mirrored).ok() != rep.ok()) ++sweep.involution_mismatches;
      }
      if (static_cast<int>(pick.size()) == max_r) return;
      for (std::size_t i = from; i < occupied.size(); ++i) {
        pick.push_back(occupied[i]);
        walk(i + 1);
        pick.pop_back();
      }
    };
    walk(0);
  });
  return sweep;
}

Rational decomposition_value(const CTable& c, int n, const Params& p) {
  const Rational big_n = n + p.a + p.b - 1;
  Rational out = 0;
  for (std::size_t h = 0; h < c.counts.size(); ++h) {
    out += Rational(c.counts[h]) * p.b / falling_factorial(big_n, static_cast<int>(h) + 2);
  }
  return out;
}

CExtraction extract_c_table(int k, const std::vector<Params>& grid, std::vector<int> ns) {
  if (k < 2) throw std::invalid_argument("coefficient extraction needs k >= 2");
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (static_cast<int>(ns.size()) < k) {
    throw std::invalid_argument("extraction needs at least k distinct sizes");
  }
  if (ns.front() < k + 2) throw std::invalid_argument("every size must be at least k + 2");
  if (grid.empty()) throw std::invalid_argument("empty parameter grid");

  using Matrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
  CExtraction out;
  out.k = k;
  out.ns = ns;
  out.unknowns = k - 1;
  out.equations = ns.size() * grid.size();
  Matrix a(out.equations, out.unknowns);
  Vector rhs(out.equations);
  std::size_t row = 0;
  for (int n : ns) {
    const auto poly = event_polynomial(n, {{k, 1, Symbol::Alpha}});
    for (const auto& p : grid) {
      const Rational big_n = n + p.a + p.b - 1;
      for (int h = 0; h < out.unknowns; ++h) a(row, h) = p.b / falling_factorial(big_n, h + 2);
      rhs(row) = poly.probability(p);
      ++row;
    }
  }
  Eigen::FullPivLU<Matrix> lu(a);
  lu.setThreshold(Rational(0));
  out.rank = static_cast<int>(lu.rank());
  if (out.rank < out.unknowns) return out;
  const Vector x = lu.solve(rhs);
  out.consistent = (a * x - rhs).isZero(Rational(0));
  out.solution.assign(x.data(), x.data() + x.size());
  out.integral = std::all_of(out.solution.begin(), out.solution.end(),
                             [](const Rational& q) { return denominator(q) == 1; });
  out.nonnegative = std::all_of(out.solution.begin(), out.solution.end(),
                                [](const Rational& q) { return q >= 0; });
  out.unit_constant = out.solution.front() == 1;
  if (out.consistent && out.integral && out.nonnegative && out.unit_constant) {
    CTable table{k, {}};
    for (const auto& q : out.solution) table.counts.push_back(numerator(q));
    out.table = std::move(table);
  }
  return out;
}

CTable direct_c_table(int k) {
  if (k < 2) throw std::invalid_argument("coefficient table needs k >= 2");
  std::map<int, std::set<std::vector<std::pair<Box, Symbol>>>> configs;
  const std::vector<int> first{1};
  for_each_tableau(k, {{k, 1, Symbol::Alpha}}, [&](const Tableau& t) {
    const DAnalysis an(t, k, first);
    std::vector<std::pair<Box, Symbol>> config;
    for (Box b : an.d_connected()) config.emplace_back(b, *t.at(b));
    configs[static_cast<int>(config.size())].insert(std::move(config));
  });
  CTable table{k, std::vector<Integer>(k - 1, 0)};
  for (const auto& [h, set] : configs) {
    if (h >= k - 1) throw std::logic_error("D-connected count above the lemma bound");
    table.counts[h] = set.size();
  }
  return table;
}

HeldOutCheck held_out_check(const CTable& c, int n, const Params& p) {
  HeldOutCheck out{n, joint_probability(n, p, {{c.k, 1, Symbol::Alpha}}),
                   decomposition_value(c, n, p)};
  out.equal = out.brute == out.predicted;
  return out;
}

DecompositionCheck alpha_decomposition_check(int n, const Params& p, int k, const CTable& c,
                                             const EventSet& tail) {
  for (const auto& e : tail) {
    if (e.k != k || e.j < k + 1) {
      throw std::invalid_argument("tail events must sit on diagonal k at columns >= k + 1");
    }
  }
  EventSet all{{k, 1, Symbol::Alpha}};
  all.insert(all.end(), tail.begin(), tail.end());
  DecompositionCheck out{joint_probability(n, p, all), 0};
  const Rational big_n = n + p.a + p.b - 1;
  for (std::size_t h = 0; h < c.counts.size(); ++h) {
    const int d = static_cast<int>(h) + 2;
    if (c.counts[h] == 0) continue;
    EventSet shifted;
    bool fits = n - d >= 1;
    for (const auto& e : tail) {
      shifted.push_back({k, e.j - d, e.content});
      if (!fits || k > n - d || e.j - d < 1 || e.j - d > n - d - k + 1) fits = false;
    }
    const Rational rest = fits ? joint_probability(n - d, p, shifted) : Rational(0);
    out.rhs += Rational(c.counts[h]) * p.b / falling_factorial(big_n, d) * rest;
  }
  out.equal = out.lhs == out.rhs;
  return out;
}

}  // namespace staircase
