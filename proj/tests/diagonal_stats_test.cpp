#include "staircase/diagonal_stats.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace staircase {
namespace {

Rational Q(long p, long q = 1) { return Rational(p, q); }

const Params kUnit{1, 1};

TEST(CountLaw, SmallCases) {
  EXPECT_EQ(count_distribution(1, kUnit, 1, Symbol::Alpha).mass,
            (std::map<int, Rational>{{0, Q(1, 2)}, {1, Q(1, 2)}}));
  EXPECT_EQ(count_distribution(2, kUnit, 2, Symbol::Alpha).mass,
            (std::map<int, Rational>{{0, Q(5, 6)}, {1, Q(1, 6)}}));
  const auto pair = joint_count_distribution(2, kUnit, 2);
  EXPECT_EQ(pair.mass, (std::map<std::pair<int, int>, Rational>{
                           {{0, 0}, Q(2, 3)}, {{1, 0}, Q(1, 6)}, {{0, 1}, Q(1, 6)}}));
  EXPECT_THROW(count_distribution(3, kUnit, 4, Symbol::Alpha), std::out_of_range);
}

TEST(CountLaw, OracleValues) {
  const auto six = count_distribution(6, kUnit, 2, Symbol::Alpha);
  EXPECT_EQ(six.mass, (std::map<int, Rational>{
                          {0, Q(3389, 5040)}, {1, Q(167, 560)}, {2, Q(7, 240)}, {3, Q(1, 5040)}}));
  EXPECT_EQ(factorial_moment(six, 1), Q(5, 14));
  EXPECT_EQ(factorial_moment(six, 2), Q(5, 84));
  const auto seven = count_distribution(7, kUnit, 2, Symbol::Alpha);
  EXPECT_EQ(seven.mass, (std::map<int, Rational>{
                            {0, Q(297, 448)}, {1, Q(403, 1344)}, {2, Q(7, 192)}, {3, Q(1, 1344)}}));
  EXPECT_EQ(factorial_moment(seven, 1), Q(3, 8));
  EXPECT_EQ(factorial_moment(seven, 2), Q(13, 168));
}

TEST(CountLaw, LawsAreDistributionsWithBoundedSupport) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& p : default_params_grid()) {
      for (int k = 1; k <= n; ++k) {
        const auto pair = joint_count_distribution(n, p, k);
        EXPECT_TRUE(pair.is_distribution());
        for (auto s : {Symbol::Alpha, Symbol::Beta}) {
          const auto d = count_distribution(n, p, k, s);
          EXPECT_TRUE(d.is_distribution());
          EXPECT_LE(d.mass.rbegin()->first, n - k + 1);
          EXPECT_EQ(marginal_of(pair, s), d);
        }
      }
    }
  }
}

TEST(CountLaw, InvolutionDuality) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& p : default_params_grid()) {
      for (int k = 1; k <= n; ++k) {
        EXPECT_EQ(count_distribution(n, p, k, Symbol::Beta),
                  count_distribution(n, p.swapped(), k, Symbol::Alpha));
        EXPECT_EQ(joint_count_distribution(n, p, k),
                  swap_coordinates(joint_count_distribution(n, p.swapped(), k)));
        EXPECT_EQ(independence_gap(n, p, k), independence_gap(n, p.swapped(), k));
      }
    }
  }
}

TEST(Moments, Basics) {
  const CountDist d{{{0, Q(5, 6)}, {1, Q(1, 6)}}};
  EXPECT_EQ(factorial_moment(d, 0), 1);
  EXPECT_EQ(factorial_moment(d, 1), Q(1, 6));
  const auto rep = moment_report(d, 2);
  EXPECT_EQ(rep.exact_value, 0);
  EXPECT_EQ(rep.target, Q(1, 4));
  EXPECT_EQ(rep.abs_error, Q(1, 4));
}

TEST(Moments, JointRouteAgrees) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& p : {kUnit, Params{Q(1, 2), 3}}) {
      for (int k = 2; k <= std::min(3, n); ++k) {
        for (auto s : {Symbol::Alpha, Symbol::Beta}) {
          const auto d = count_distribution(n, p, k, s);
          for (int r = 1; r <= 3; ++r) {
            EXPECT_EQ(factorial_moment_via_joints(n, p, k, s, r), factorial_moment(d, r))
                << n << " " << k << " " << r;
          }
        }
      }
    }
  }
}

TEST(Moments, MeanClosedForm) {
  for (int n = 4; n <= 10; ++n) {
    EXPECT_EQ(factorial_moment(count_distribution(n, kUnit, 2, Symbol::Alpha), 1),
              Q(n - 1, 2 * (n + 1)));
  }
}

TEST(Moments, ErrorShrinksWithN) {
  for (int k = 2; k <= 4; ++k) {
    for (int r = 1; r <= 2; ++r) {
      Rational previous = -1;
      for (int n = k + 3; n <= 10; ++n) {
        const auto err = moment_report(count_distribution(n, kUnit, k, Symbol::Alpha), r).abs_error;
        if (previous >= 0) {
          EXPECT_LT(err, previous) << k << " " << r << " " << n;
        }
        previous = err;
      }
    }
  }
}

TEST(GappedSum, Examples) {
  const auto a = lemma_la_check(1, 5);
  EXPECT_EQ(a.lhs, 15);
  EXPECT_TRUE(a.equal);
  const auto b = lemma_la_check(2, 4);
  EXPECT_EQ(b.lhs, 15);
  EXPECT_EQ(b.rhs, 15);
  const auto c = lemma_la_check(3, 2);
  EXPECT_EQ(c.lhs, 0);
  EXPECT_EQ(c.rhs, 0);
  for (int r = 1; r <= 4; ++r) {
    for (int m = 1; m <= 14; ++m) EXPECT_TRUE(lemma_la_check(r, m).equal) << r << " " << m;
  }
}

TEST(ProductFormula, SingleIndexIsTheMarginalOnDiagonalTwo) {
  for (int n = 2; n <= 9; ++n) {
    for (const auto& p : default_params_grid()) {
      for (int j = 1; j <= n - 1; ++j) {
        const std::vector<int> one{j};
        EXPECT_EQ(theorem4_product(n, p, one), marginal_kth_diagonal(n, p, 2, j, Symbol::Alpha));
      }
    }
  }
}

TEST(ProductFormula, MixedMatchesMarginals) {
  const Params p{2, Q(2, 3)};
  for (int k = 2; k <= 4; ++k) {
    for (int j = 1; j <= 8 - k + 1; ++j) {
      for (auto s : {Symbol::Alpha, Symbol::Beta}) {
        const std::vector<MixedIndex> one{{j, s}};
        EXPECT_EQ(theorem7_product(8, p, k, one), marginal_kth_diagonal(8, p, k, j, s));
      }
    }
  }
}

TEST(ProductFormula, GapCondition) {
  const std::vector<int> close{1, 2}, far{1, 3};
  EXPECT_FALSE(respects_gap(close, 2));
  EXPECT_TRUE(respects_gap(far, 2));
  const std::vector<int> bad{3, 1};
  EXPECT_THROW(respects_gap(bad, 2), std::invalid_argument);
}

TEST(ErrorScan, RowsAndScaling) {
  const auto rows = theorem4_error_scan(6, 7, kUnit, 3, {{1, 4}, {1, 2}});
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.delta, row.exact - row.product);
    std::vector<EventSet::value_type> events;
    for (const auto& m : row.tuple) events.push_back({3, m.j, m.symbol});
    EXPECT_EQ(row.exact, joint_probability(row.n, kUnit, events));
    const double n = row.n;
    if (row.gap_ok) {
      EXPECT_NEAR(row.scaled.convert_to<double>(),
                  n * n * n * std::abs(row.delta.convert_to<double>()), 1e-9);
    } else {
      EXPECT_NEAR(row.scaled.convert_to<double>(), n * n * row.exact.convert_to<double>(), 1e-9);
    }
  }
  EXPECT_EQ(joint_probability(5, kUnit, {{2, 1, Symbol::Alpha}, {2, 4, Symbol::Alpha}}), Q(1, 180));
}

TEST(ErrorScan, SingleIndexIsExactOnDiagonalTwo) {
  for (const auto& row : theorem4_error_scan(4, 8, Params{Q(1, 2), 3}, 2, {{1}, {2}, {3}})) {
    EXPECT_EQ(row.delta, 0);
  }
}

TEST(Poisson, PmfAndTv) {
  EXPECT_NEAR(poisson_pmf(Q(1, 2), 0).convert_to<double>(), 0.6065306597126334, 1e-15);
  Float s = 0;
  for (int c = 0; c < 40; ++c) s += poisson_pmf(Q(1, 2), c);
  EXPECT_NEAR(s.convert_to<double>(), 1.0, 1e-15);
  EXPECT_THROW(poisson_pmf(0, 1), std::invalid_argument);
  const CountDist d{{{0, Q(1, 2)}, {1, Q(1, 2)}}};
  EXPECT_EQ(tv_distance(d, d), 0);
  const auto self = tv_distance(d, [](int c) { return c <= 1 ? Float(0.5) : Float(0); });
  EXPECT_EQ(self, 0);
  // Reference mass outside the support of d counts in full.
  const auto point = tv_distance(CountDist{{{0, Q(1)}}}, [](int c) {
    return c == 1 ? Float(1) : Float(0);
  });
  EXPECT_EQ(point, 1);
}

TEST(Poisson, TvShrinksWithN) {
  std::vector<double> tv, gap;
  for (int n = 5; n <= 9; ++n) {
    tv.push_back(tv_to_poisson(count_distribution(n, kUnit, 2, Symbol::Alpha)).convert_to<double>());
    gap.push_back(independence_gap(n, kUnit, 2).convert_to<double>());
  }
  EXPECT_TRUE(strictly_decreasing(tv));
  EXPECT_TRUE(strictly_decreasing(gap));
}

TEST(Independence, FactorizedLawHasNoGap) {
  PairDist d;
  d.mass = {{{0, 0}, Q(1, 4)}, {{0, 1}, Q(1, 4)}, {{1, 0}, Q(1, 4)}, {{1, 1}, Q(1, 4)}};
  EXPECT_EQ(independence_gap(d), 0);
  EXPECT_EQ(product_of_marginals(d), d);
}

TEST(Slope, Fit) {
  const std::vector<double> x{1, 2, 4, 8};
  const std::vector<double> y{1, 4, 16, 64};
  const auto fit = loglog_slope(x, y);
  ASSERT_TRUE(fit.slope);
  EXPECT_NEAR(*fit.slope, 2.0, 1e-12);
  const std::vector<double> zero{0, 0, 0, 0};
  EXPECT_TRUE(loglog_slope(x, zero).all_zero);
  const std::vector<double> partial{0, 1, 1, 1};
  const auto mixed = loglog_slope(x, partial);
  EXPECT_FALSE(mixed.all_zero);
  EXPECT_FALSE(mixed.slope);
  EXPECT_TRUE(strictly_decreasing(std::vector<double>{3, 2, 1}));
  EXPECT_FALSE(strictly_decreasing(std::vector<double>{3, 3, 1}));
}

}  // namespace
}  // namespace staircase
