#include "staircase/diagonal_stats.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace staircase {

namespace {

void check_diagonal(int n, int k) {
  if (k < 1 || k > n) throw std::out_of_range("diagonal index must satisfy 1 <= k <= n");
}

}  // namespace

DiagonalCensus::DiagonalCensus(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("tableau size must be at least 1");
  const int side = n + 1;
  polys_.assign(n * side * side, WeightPolynomial(n));
  std::vector<int> diag(box_count(n));
  for (int i = 0; i < box_count(n); ++i) diag[i] = diagonal_of(n, storage_box(n, i)) - 1;
  std::vector<int> alphas(n), betas(n);
  for_each_tableau(n, [&](const Tableau& t) {
    std::fill(alphas.begin(), alphas.end(), 0);
    std::fill(betas.begin(), betas.end(), 0);
    const auto cells = t.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      alphas[diag[i]] += cells[i] == detail::Cell::Alpha;
      betas[diag[i]] += cells[i] == detail::Cell::Beta;
    }
    const int na = t.count(Symbol::Alpha);
    const int nb = t.count(Symbol::Beta);
    for (int k = 0; k < n; ++k) polys_[(k * side + alphas[k]) * side + betas[k]].add(na, nb);
  });
}

const DiagonalCensus& DiagonalCensus::of(int n) {
  static std::mutex lock;
  static std::map<int, std::unique_ptr<DiagonalCensus>> cache;
  std::scoped_lock guard(lock);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<DiagonalCensus>(n);
  return *slot;
}

const WeightPolynomial& DiagonalCensus::polynomial(int k, int alphas, int betas) const {
  check_diagonal(n_, k);
  const int side = n_ + 1;
  if (alphas < 0 || alphas > n_ || betas < 0 || betas > n_) {
    throw std::out_of_range("count outside the census range");
  }
  return polys_[((k - 1) * side + alphas) * side + betas];
}

PairDist DiagonalCensus::pair_law(int k, const Params& p) const {
  check_diagonal(n_, k);
  const Rational z = normalized_partition(n_, p);
  PairDist out;
  for (int a = 0; a <= n_; ++a) {
    for (int b = 0; b <= n_; ++b) {
      const auto& poly = polynomial(k, a, b);
      if (poly.empty()) continue;
      Rational q = poly.weight(p) / z;
      if (q != 0) out.mass.emplace(std::pair{a, b}, std::move(q));
    }
  }
  return out;
}

CountDist DiagonalCensus::count_law(int k, const Params& p, Symbol s) const {
  return marginal_of(pair_law(k, p), s);
}

CountDist count_distribution(int n, const Params& p, int k, Symbol s) {
  check_diagonal(n, k);
  return DiagonalCensus::of(n).count_law(k, p, s);
}

PairDist joint_count_distribution(int n, const Params& p, int k) {
  check_diagonal(n, k);
  return DiagonalCensus::of(n).pair_law(k, p);
}

CountDist marginal_of(const PairDist& d, Symbol s) {
  CountDist out;
  for (const auto& [key, q] : d.mass) {
    out.mass[s == Symbol::Alpha ? key.first : key.second] += q;
  }
  return out;
}

PairDist product_of_marginals(const PairDist& d) {
  const auto x = marginal_of(d, Symbol::Alpha);
  const auto y = marginal_of(d, Symbol::Beta);
  PairDist out;
  for (const auto& [a, qa] : x.mass) {
    for (const auto& [b, qb] : y.mass) out.mass.emplace(std::pair{a, b}, qa * qb);
  }
  return out;
}

PairDist swap_coordinates(const PairDist& d) {
  PairDist out;
  for (const auto& [key, q] : d.mass) out.mass.emplace(std::pair{key.second, key.first}, q);
  return out;
}

Rational factorial_moment(const CountDist& d, int r) {
  if (r < 0) throw std::invalid_argument("moment order must be nonnegative");
  Rational s = 0;
  for (const auto& [c, q] : d.mass) s += q * falling_factorial(c, r);
  return s;
}

Rational factorial_moment_via_joints(int n, const Params& p, int k, Symbol s, int r) {
  check_diagonal(n, k);
  if (r < 1) throw std::invalid_argument("moment order must be at least 1");
  const int len = n - k + 1;
  Rational sum = 0;
  std::vector<int> idx(r);
  // Lexicographic r-subsets of {1, ..., len}.
  std::function<void(int, int)> walk = [&](int depth, int from) {
    if (depth == r) {
      EventSet events;
      for (int j : idx) events.push_back({k, j, s});
      sum += joint_probability(n, p, events);
      return;
    }
    for (int j = from; j <= len; ++j) {
      idx[depth] = j;
      walk(depth + 1, j + 1);
    }
  };
  walk(0, 1);
  return Rational(Integer(factorial(r))) * sum;
}

MomentReport moment_report(const CountDist& d, int r, const Rational& lambda) {
  MomentReport rep{r, factorial_moment(d, r), power(lambda, r), 0};
  rep.abs_error = abs(rep.exact_value - rep.target);
  return rep;
}

LemmaLaResult lemma_la_check(int r, int m) {
  if (r < 1 || m < 1) throw std::invalid_argument("lemma check needs r >= 1 and m >= 1");
  Integer lhs = 0;
  std::vector<int> idx(r);
  std::function<void(int, int)> walk = [&](int depth, int from) {
    if (depth == r) {
      Integer prod = 1;
      for (int j : idx) prod *= j;
      lhs += prod;
      return;
    }
    for (int j = from; j <= m; ++j) {
      idx[depth] = j;
      walk(depth + 1, j + 2);
    }
  };
  walk(0, 1);
  LemmaLaResult out{r, m, Rational(lhs),
                    falling_factorial(m + 1, 2 * r) / (power(2, r) * Rational(factorial(r)))};
  out.equal = out.lhs == out.rhs;
  return out;
}

bool respects_gap(std::span<const int> j, int k) {
  bool ok = true;
  for (std::size_t l = 0; l + 1 < j.size(); ++l) {
    if (j[l + 1] <= j[l]) throw std::invalid_argument("column indices must be strictly increasing");
    if (j[l + 1] - j[l] < k) ok = false;
  }
  return ok;
}

Rational theorem4_product(int n, const Params& p, std::span<const int> j) {
  const int r = static_cast<int>(j.size());
  Rational out = 1;
  for (int l = 1; l <= r; ++l) {
    out *= (p.b + j[r - l] - 2 * r + 2 * l - 1) /
           falling_factorial(n + p.a + p.b - 2 * r + 2 * l - 1, 2);
  }
  return out;
}

Rational theorem7_product(int n, const Params& p, int k, std::span<const MixedIndex> tuple) {
  const Rational den = falling_factorial(n + p.a + p.b - k + 1, 2);
  Rational out = 1;
  for (const auto& x : tuple) {
    if (x.symbol == Symbol::Alpha) {
      out *= (x.j + p.b - 1) / den;
    } else {
      out *= (n - x.j - k + p.a + 1) / den;
    }
  }
  return out;
}

namespace {

RemainderRow remainder_row(int n, const Params& p, int k, std::vector<MixedIndex> tuple,
                           const Rational& product) {
  std::vector<int> cols;
  EventSet events;
  for (const auto& x : tuple) {
    cols.push_back(x.j);
    events.push_back({k, x.j, x.symbol});
  }
  if (cols.empty()) throw std::invalid_argument("empty index tuple");
  if (cols.back() > n - k + 1) throw std::out_of_range("index tuple does not fit size n");
  RemainderRow row;
  row.n = n;
  row.tuple = std::move(tuple);
  row.gap_ok = respects_gap(cols, k);
  row.exact = joint_probability(n, p, events);
  row.product = product;
  row.delta = row.exact - row.product;
  const int r = static_cast<int>(cols.size());
  const Rational base = row.gap_ok ? abs(row.delta) : row.exact;
  row.scaled = to_float(base * power(Rational(n), row.gap_ok ? r + 1 : r));
  return row;
}

}  // namespace

std::vector<RemainderRow> theorem4_error_scan(int n_lo, int n_hi, const Params& p, int k,
                                              const std::vector<std::vector<int>>& tuples) {
  std::vector<RemainderRow> out;
  for (const auto& j : tuples) {
    std::vector<MixedIndex> mixed;
    for (int c : j) mixed.push_back({c, Symbol::Alpha});
    for (int n = n_lo; n <= n_hi; ++n) {
      out.push_back(remainder_row(n, p, k, mixed, theorem4_product(n, p, j)));
    }
  }
  return out;
}

std::vector<RemainderRow> theorem7_error_scan(int n_lo, int n_hi, const Params& p, int k,
                                              const std::vector<std::vector<MixedIndex>>& tuples) {
  std::vector<RemainderRow> out;
  for (const auto& t : tuples) {
    for (int n = n_lo; n <= n_hi; ++n) {
      out.push_back(remainder_row(n, p, k, t, theorem7_product(n, p, k, t)));
    }
  }
  return out;
}

Float poisson_pmf(const Rational& lambda, int c) {
  if (lambda <= 0) throw std::invalid_argument("Poisson rate must be positive");
  if (c < 0) return 0;
  const Float l = to_float(lambda);
  Float out = boost::multiprecision::exp(-l);
  for (int i = 1; i <= c; ++i) out *= l / i;
  return out;
}

Float tv_distance(const CountDist& d, const std::function<Float(int)>& pmf) {
  int top = 0;
  if (!d.mass.empty()) top = std::max(0, d.mass.rbegin()->first);
  Float sum = 0;
  Float covered = 0;
  for (int c = 0; c <= top; ++c) {
    const Float ref = pmf(c);
    covered += ref;
    sum += boost::multiprecision::abs(to_float(d.at(c)) - ref);
  }
  const Float tail = 1 - covered;
  sum += tail > 0 ? tail : Float(0);
  return sum / 2;
}

Float tv_to_poisson(const CountDist& d, const Rational& lambda) {
  return tv_distance(d, [&](int c) { return poisson_pmf(lambda, c); });
}

Rational independence_gap(const PairDist& d) { return tv_distance(d, product_of_marginals(d)); }

Rational independence_gap(int n, const Params& p, int k) {
  return independence_gap(joint_count_distribution(n, p, k));
}

SlopeFit loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs two or more paired points");
  }
  SlopeFit fit;
  std::size_t zeros = 0;
  for (double v : y) zeros += v == 0.0;
  if (zeros == y.size()) {
    fit.all_zero = true;
    return fit;
  }
  if (zeros > 0) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

bool strictly_decreasing(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] < values[i - 1])) return false;
  }
  return true;
}

}  // namespace staircase
