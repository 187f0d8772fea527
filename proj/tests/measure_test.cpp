#include "staircase/measure.hpp"
#include "staircase/tableau_io.hpp"

#include <gtest/gtest.h>

namespace staircase {
namespace {

Rational Q(long p, long q = 1) { return Rational(p, q); }

TEST(RationalText, ParseAndRender) {
  EXPECT_EQ(parse_rational("3/6"), Q(1, 2));
  EXPECT_EQ(parse_rational("-4"), Q(-4));
  EXPECT_EQ(to_string(Q(6, 4)), "3/2");
  EXPECT_EQ(to_string(Q(5)), "5");
  for (const char* bad : {"", "1/0", "a", "1/-2", "1//2", "2.5"}) {
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
  }
  EXPECT_EQ(power(0, 0), 1);
  EXPECT_EQ(falling_factorial(5, 0), 1);
  EXPECT_EQ(falling_factorial(Q(1, 2), 2), Q(-1, 4));
}

TEST(Params, Validation) {
  EXPECT_THROW(Params::make(-1, 1), std::invalid_argument);
  EXPECT_THROW(Params::make(0, 0), std::invalid_argument);
  EXPECT_EQ(Params::parse("1/2", "3"), (Params{Q(1, 2), Q(3)}));
  EXPECT_EQ(default_params_grid().size(), 5u);
}

TEST(Partition, Examples) {
  EXPECT_EQ(normalized_partition(3, {1, 1}), 24);
  EXPECT_EQ(normalized_partition(1, {0, 1}), 1);
  EXPECT_EQ(normalized_partition(2, {2, 3}), 30);
  Rational brute = 0;
  for (const auto& t : materialize(2)) brute += unnormalized_weight(t, {2, 3});
  EXPECT_EQ(brute, 30);
}

TEST(Partition, NormalizationOverGrid) {
  for (int n = 1; n <= 7; ++n) {
    WeightPolynomial w(n);
    for_each_tableau(n, [&](const Tableau& t) { w.add(t); });
    for (const auto& p : default_params_grid()) {
      EXPECT_EQ(w.weight(p), normalized_partition(n, p)) << n << " " << p.label();
      EXPECT_EQ(w.probability(p), 1);
    }
  }
}

TEST(Probability, Examples) {
  const auto one = parse_grid("a\n");
  EXPECT_EQ(probability(one, {1, 1}), Q(1, 2));
  const auto t = parse_grid(".a\nb\n");
  EXPECT_EQ(probability(t, {1, 2}), Q(1, 6));
  EXPECT_THROW(probability(parse_grid(".a\n.\n"), {1, 1}), std::invalid_argument);
  for (const auto& s : materialize(5)) EXPECT_EQ(probability(s, {1, 1}), Q(1, 720));
}

TEST(Marginals, Examples) {
  EXPECT_EQ(marginal_first_diagonal(2, {1, 1}, 1, Symbol::Alpha), Q(1, 3));
  EXPECT_EQ(marginal_first_diagonal(3, {1, 1}, 2, Symbol::Alpha), Q(1, 2));
  EXPECT_EQ(marginal_kth_diagonal(4, {1, 1}, 2, 1, Symbol::Alpha), Q(1, 20));
  EXPECT_EQ(marginal_kth_diagonal(4, {1, 1}, 2, 1, Symbol::Beta), Q(3, 20));
  EXPECT_EQ(marginal(5, {1, 2}, {2, 1, Symbol::Alpha}), Q(1, 21));
  EXPECT_EQ(marginal(3, {1, 1}, {1, 2, Content{}}), 0);
  EXPECT_THROW(marginal_first_diagonal(3, {1, 1}, 4, Symbol::Alpha), std::out_of_range);
}

TEST(Marginals, ClosedFormsMatchBruteForce) {
  for (int n = 1; n <= 7; ++n) {
    const BoxCensus census(n);
    for (const auto& p : default_params_grid()) {
      for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= n - k + 1; ++j) {
          Rational total = 0;
          for (Content c : {Content{Symbol::Alpha}, Content{Symbol::Beta}, Content{}}) {
            const auto closed = marginal(n, p, {k, j, c});
            EXPECT_EQ(closed, census.probability(box_at(n, {k, j}), c, p))
                << n << " " << k << " " << j << " " << p.label();
            total += closed;
          }
          EXPECT_EQ(total, 1);
        }
      }
    }
  }
}

TEST(Marginals, InvolutionDuality) {
  for (int n = 1; n <= 7; ++n) {
    const BoxCensus census(n);
    for (const auto& p : default_params_grid()) {
      for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= n - k + 1; ++j) {
          EXPECT_EQ(census.probability(box_at(n, {k, j}), Symbol::Alpha, p),
                    census.probability(box_at(n, {k, n - k - j + 2}), Symbol::Beta, p.swapped()));
        }
      }
    }
  }
}

TEST(Joint, Examples) {
  EXPECT_EQ(joint_probability(4, {1, 2}, {}), 1);
  EXPECT_EQ(joint_probability(5, {1, 1}, {{2, 1, Symbol::Alpha}, {2, 4, Symbol::Alpha}}),
            Q(1, 180));
  EXPECT_EQ(joint_probability(5, {1, 2}, {{2, 1, Symbol::Alpha}}), Q(1, 21));
  EXPECT_THROW(joint_probability(3, {1, 1}, {{1, 1, Symbol::Alpha}, {1, 1, Symbol::Beta}}),
               std::invalid_argument);
}

TEST(Subtableau, LawExamples) {
  EXPECT_TRUE(subtableau_law_check(4, {1, 1}, 1, 1).ok());
  const auto r = subtableau_law_check(4, {1, 1}, 1, 2);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.sub_size, 3);
  EXPECT_EQ(r.sub_params, (Params{1, 2}));
  EXPECT_EQ(r.states, 24u);
  const auto s = subtableau_law_check(5, {Q(1, 2), 3}, 2, 2);
  EXPECT_TRUE(s.ok());
  EXPECT_EQ(s.states, 24u);
  EXPECT_THROW(subtableau_law_check(3, {1, 1}, 3, 2), std::out_of_range);
}

TEST(Subtableau, LawOverGrid) {
  for (int n = 1; n <= 6; ++n) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; i + j <= n + 1; ++j) {
        for (const auto& r : subtableau_law_check(n, default_params_grid(), i, j)) {
          EXPECT_TRUE(r.ok()) << n << " " << i << " " << j << " " << r.sub_params.label();
        }
      }
    }
  }
}

}  // namespace
}  // namespace staircase
