#pragma once

// Exact laws of symbol counts on a diagonal, factorial moments, and
// finite-n diagnostics for the Poisson(1/2) limits.

#include "staircase/measure.hpp"
#include "staircase/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace staircase {

template <class Key>
struct ExactDist {
  std::map<Key, Rational> mass;

  Rational at(const Key& key) const {
    const auto it = mass.find(key);
    return it == mass.end() ? Rational(0) : it->second;
  }
  Rational total() const {
    Rational s = 0;
    for (const auto& [key, q] : mass) s += q;
    return s;
  }
  bool is_distribution() const {
    for (const auto& [key, q] : mass) {
      if (q < 0) return false;
    }
    return total() == 1;
  }

  friend bool operator==(const ExactDist&, const ExactDist&) = default;
};

using CountDist = ExactDist<int>;
/// Keyed by (number of Alphas, number of Betas).
using PairDist = ExactDist<std::pair<int, int>>;

/// One enumeration pass recording, for every diagonal k, how many tableaux
/// have each (A, B, N_alpha, N_beta), where A and B count the symbols on
/// diagonal k. Laws at any Params are then exact evaluations.
class DiagonalCensus {
 public:
  explicit DiagonalCensus(int n);

  /// Shared census per n; built once per process.
  static const DiagonalCensus& of(int n);

  int size() const noexcept { return n_; }
  const WeightPolynomial& polynomial(int k, int alphas, int betas) const;

  PairDist pair_law(int k, const Params& p) const;
  CountDist count_law(int k, const Params& p, Symbol s) const;

 private:
  int n_;
  std::vector<WeightPolynomial> polys_;  // [k-1][A][B]
};

/// Throws std::out_of_range unless 1 <= k <= n.
CountDist count_distribution(int n, const Params& p, int k, Symbol s);
PairDist joint_count_distribution(int n, const Params& p, int k);

CountDist marginal_of(const PairDist& d, Symbol s);
PairDist product_of_marginals(const PairDist& d);
/// (A, B) -> (B, A).
PairDist swap_coordinates(const PairDist& d);

/// sum_c d(c) (c)_r.
Rational factorial_moment(const CountDist& d, int r);

/// r! times the sum of joint probabilities over all r-subsets of diagonal k,
/// each computed by filtered enumeration.
Rational factorial_moment_via_joints(int n, const Params& p, int k, Symbol s, int r);

struct MomentReport {
  int r = 0;
  Rational exact_value;
  Rational target;
  Rational abs_error;
};

/// Target lambda^r, the Poisson factorial moment.
MomentReport moment_report(const CountDist& d, int r, const Rational& lambda = Rational(1, 2));

struct LemmaLaResult {
  int r = 0;
  int m = 0;
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

/// Sum over 1 <= j_1 < ... < j_r <= m with j_{l+1} - j_l >= 2 of the
/// product of the j's, against (m + 1)_{2r} / (2^r r!).
LemmaLaResult lemma_la_check(int r, int m);

/// prod_l (b + j_{r-l+1} - 2r + 2l - 1) / (n + a + b - 2r + 2l - 1)_2.
Rational theorem4_product(int n, const Params& p, std::span<const int> j);

struct MixedIndex {
  int j = 1;
  Symbol symbol = Symbol::Alpha;
};

/// prod over Alphas (j + b - 1)/(n+a+b-k+1)_2 times prod over Betas
/// (n - j - k + a + 1)/(n+a+b-k+1)_2.
Rational theorem7_product(int n, const Params& p, int k, std::span<const MixedIndex> tuple);

/// True when consecutive columns differ by at least k. Throws
/// std::invalid_argument unless strictly increasing.
bool respects_gap(std::span<const int> j, int k);

struct RemainderRow {
  int n = 0;
  std::vector<MixedIndex> tuple;
  bool gap_ok = false;
  Rational exact;
  Rational product;
  Rational delta;  // exact - product
  /// n^(r+1) |delta| when gap_ok, else n^r * exact.
  Float scaled;
};

std::vector<RemainderRow> theorem4_error_scan(int n_lo, int n_hi, const Params& p, int k,
                                              const std::vector<std::vector<int>>& tuples);
std::vector<RemainderRow> theorem7_error_scan(int n_lo, int n_hi, const Params& p, int k,
                                              const std::vector<std::vector<MixedIndex>>& tuples);

/// e^-lambda lambda^c / c!. Throws std::invalid_argument for lambda <= 0.
Float poisson_pmf(const Rational& lambda, int c);

/// (1/2) sum_c |d(c) - pmf(c)|, including the reference mass beyond the
/// support of d. `pmf` must be a probability mass function on c >= 0.
Float tv_distance(const CountDist& d, const std::function<Float(int)>& pmf);
Float tv_to_poisson(const CountDist& d, const Rational& lambda = Rational(1, 2));

template <class Key>
Rational tv_distance(const ExactDist<Key>& x, const ExactDist<Key>& y) {
  Rational s = 0;
  for (const auto& [key, q] : x.mass) s += abs(q - y.at(key));
  for (const auto& [key, q] : y.mass) {
    if (!x.mass.contains(key)) s += abs(q);
  }
  return s / 2;
}

/// Exact TV between the pair law and the product of its marginals.
Rational independence_gap(const PairDist& d);
Rational independence_gap(int n, const Params& p, int k);

struct SlopeFit {
  bool all_zero = false;
  /// Least-squares slope of log y against log x; empty when all_zero or
  /// when some but not all y vanish.
  std::optional<double> slope;
};

SlopeFit loglog_slope(std::span<const double> x, std::span<const double> y);

bool strictly_decreasing(std::span<const double> values);

}  // namespace staircase
