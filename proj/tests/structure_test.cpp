#include "staircase/structure.hpp"

#include <gtest/gtest.h>

namespace staircase {
namespace {

Rational Q(long p, long q = 1) { return Rational(p, q); }

Tableau build(int n, std::initializer_list<std::pair<Box, Symbol>> cells) {
  auto t = Tableau::empty(n);
  for (const auto& [b, s] : cells) t = t.with(b, s);
  return t;
}

// Size 11 with diagonal-8 symbols at columns 1 and 4.
Tableau two_event_fixture() {
  const auto A = Symbol::Alpha, B = Symbol::Beta;
  return build(11, {{{1, 11}, A}, {{2, 10}, B}, {{3, 9}, A}, {{4, 8}, A},  {{5, 7}, B},
                    {{6, 6}, A},  {{7, 5}, A},  {{8, 4}, B}, {{9, 3}, B},  {{10, 2}, B},
                    {{11, 1}, B}, {{1, 10}, A}, {{4, 7}, A}, {{4, 1}, A},  {{7, 3}, B},
                    {{6, 3}, A},  {{6, 1}, B},  {{1, 4}, B}});
}

TEST(MStat, Examples) {
  const std::vector<int> a{1, 2, 5}, b{1, 3}, c{1, 2, 3};
  EXPECT_EQ(compute_m(a, 3).m, 2);
  EXPECT_EQ(compute_m(b, 2).m, 1);
  EXPECT_EQ(compute_m(c, 5).m, 3);
  EXPECT_THROW(compute_m(std::vector<int>{}, 2), std::invalid_argument);
  EXPECT_THROW(compute_m(std::vector<int>{2, 2}, 2), std::invalid_argument);
}

TEST(MStat, HatK) {
  const std::vector<int> two{1, 3, 5, 20};
  const auto s = compute_m(two, 6);
  EXPECT_EQ(s.m, 3);
  EXPECT_EQ(hat_k(s), 10);
  EXPECT_EQ(hat_k(compute_m(std::vector<int>{1, 20}, 7)), 7);
  EXPECT_EQ(hat_k(compute_m(std::vector<int>{1, 4}, 8)), 11);
}

TEST(DConnected, TwoEventFixture) {
  const auto t = two_event_fixture();
  ASSERT_TRUE(is_valid(t));
  EXPECT_EQ(t.symbol_count(), 18);
  const std::vector<int> cols{1, 4};
  const DAnalysis an(t, 8, cols);
  EXPECT_EQ(an.m_stat().m, 2);
  EXPECT_EQ(an.hat_k(), 11);
  const std::set<Box> expected{{1, 10}, {4, 7}, {6, 1}, {6, 3}, {7, 3}};
  EXPECT_EQ(an.d_connected(), expected);
  const auto rep = verify_lemma3(t, 8, cols);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.d_connected, 5u);
  EXPECT_EQ(rep.bound, 8);
}

TEST(DConnected, ForcedOnlyTableauIsEmpty) {
  const auto t = build(5, {{{1, 5}, Symbol::Alpha}, {{2, 4}, Symbol::Alpha},
                           {{3, 3}, Symbol::Beta},  {{4, 2}, Symbol::Beta},
                           {{5, 1}, Symbol::Beta},  {{2, 2}, Symbol::Alpha}});
  ASSERT_TRUE(is_valid(t));
  const std::vector<int> cols{2};
  const DAnalysis an(t, 3, cols);
  EXPECT_TRUE(an.d_connected().empty());
  EXPECT_TRUE(verify_lemma3(t, 3, cols).ok());
}

TEST(DConnected, RejectsBadEvents) {
  const auto t = two_event_fixture();
  const std::vector<int> empty_box{2};
  EXPECT_THROW(DAnalysis(t, 8, empty_box), std::invalid_argument);
  const std::vector<int> outside{9};
  EXPECT_THROW(DAnalysis(t, 8, outside), std::out_of_range);
}

TEST(Paths, SingletonAndLength) {
  const auto t = two_event_fixture();
  const std::vector<int> cols{1, 4};
  const DAnalysis an(t, 8, cols);
  for (int r = 1; r <= 11; ++r) {
    for (int c = 1; r + c <= 12; ++c) {
      const Box b{r, c};
      if (!an.is_candidate(b)) {
        if (t.at(b) && !on_first_diagonal(11, b) && diagonal_of(11, b) != 8 && an.in_window(b)) {
          ADD_FAILURE() << "symbol in window not a candidate";
        }
        continue;
      }
      const auto path = an.ab_path(b);
      EXPECT_EQ(path.front(), b);
      EXPECT_LE(static_cast<int>(path.size()), t.symbol_count());
    }
  }
  EXPECT_THROW(an.ab_path(Box{2, 2}), std::invalid_argument);
  const auto closure = an.d_connected();
  const auto walk = an.d_connected_by_paths();
  for (Box b : walk) EXPECT_TRUE(closure.contains(b));
}

TEST(DRegion, BoundaryEndpoints) {
  const std::vector<int> cols{1, 4};
  const DAnalysis an(two_event_fixture(), 8, cols);
  const auto region = an.d_region();
  ASSERT_FALSE(region.boundary.empty());
  // From the Beta below the first symbol to the Alpha right of the m-th.
  EXPECT_EQ(region.boundary.front(), (Box{11, 1}));
  EXPECT_EQ(region.boundary.back(), (Box{1, 11}));
}

TEST(DConnectedSweep, Exhaustive) {
  for (int n = 3; n <= 6; ++n) {
    for (int k = 2; k <= n - 1; ++k) {
      const auto s = lemma3_sweep(n, k, 2);
      EXPECT_GT(s.cases, 0u);
      EXPECT_EQ(s.violations(), 0u) << n << " " << k;
    }
  }
}

TEST(CTable, DirectCounts) {
  EXPECT_EQ(direct_c_table(2).counts, (std::vector<Integer>{1}));
  EXPECT_EQ(direct_c_table(3).counts, (std::vector<Integer>{1, 2}));
  EXPECT_EQ(direct_c_table(4).counts, (std::vector<Integer>{1, 4, 6}));
  EXPECT_EQ(direct_c_table(5).counts, (std::vector<Integer>{1, 6, 18, 24}));
}

TEST(CTable, ExtractionAgreesWithDirectCount) {
  for (int k = 2; k <= 3; ++k) {
    const auto ex = extract_c_table(k, default_params_grid(), {5, 6, 7, 8, 9});
    ASSERT_TRUE(ex.ok());
    EXPECT_TRUE(ex.consistent);
    EXPECT_TRUE(ex.integral);
    EXPECT_TRUE(ex.nonnegative);
    EXPECT_TRUE(ex.unit_constant);
    EXPECT_EQ(ex.rank, k - 1);
    EXPECT_EQ(*ex.table, direct_c_table(k));
    for (const auto& p : default_params_grid()) {
      EXPECT_TRUE(held_out_check(*ex.table, 10, p).equal);
      EXPECT_TRUE(held_out_check(*ex.table, 4, p).equal) << k;
    }
  }
  EXPECT_THROW(extract_c_table(3, default_params_grid(), {5, 6}), std::invalid_argument);
  EXPECT_THROW(extract_c_table(1, default_params_grid(), {5, 6}), std::invalid_argument);
}

TEST(CTable, SubsetIndependence) {
  const auto full = extract_c_table(3, {{1, 1}, {Q(1, 2), 3}}, {5, 6, 7, 8, 9});
  const auto head = extract_c_table(3, {{1, 1}, {Q(1, 2), 3}}, {5, 6, 7});
  const auto tail = extract_c_table(3, {{1, 1}, {Q(1, 2), 3}}, {7, 8, 9});
  EXPECT_EQ(head.solution, full.solution);
  EXPECT_EQ(tail.solution, full.solution);
}

TEST(CTable, KTwoIsTheMarginal) {
  const CTable c{2, {1}};
  for (int n = 3; n <= 8; ++n) {
    for (const auto& p : default_params_grid()) {
      EXPECT_EQ(decomposition_value(c, n, p), marginal_kth_diagonal(n, p, 2, 1, Symbol::Alpha));
    }
  }
}

TEST(CTable, DecompositionWithTail) {
  const CTable c2{2, {1}};
  const CTable c3 = direct_c_table(3);
  for (const auto& p : {Params{1, 1}, Params{Q(1, 2), 3}}) {
    EXPECT_TRUE(alpha_decomposition_check(7, p, 2, c2, {{2, 4, Symbol::Alpha}}).equal);
    EXPECT_TRUE(alpha_decomposition_check(8, p, 3, c3, {{3, 5, Symbol::Beta}}).equal);
  }
}

}  // namespace
}  // namespace staircase
