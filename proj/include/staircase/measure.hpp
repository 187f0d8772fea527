#pragma once

// The weighted measure on size-n tableaux in the reciprocal parameters
// a = 1/alpha, b = 1/beta:
//   P(S) = a^(n - N_alpha) b^(n - N_beta) / (a + b + n - 1)_n,  0^0 = 1.

#include "staircase/enumeration.hpp"
#include "staircase/rational.hpp"
#include "staircase/tableau.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace staircase {

struct Params {
  Rational a{1};
  Rational b{1};

  /// Throws std::invalid_argument for a negative entry or a = b = 0
  /// (the partition function vanishes there).
  static Params make(Rational a, Rational b);
  static Params parse(std::string_view a, std::string_view b);

  Params swapped() const { return {b, a}; }
  std::string label() const;

  friend bool operator==(const Params&, const Params&) = default;
};

/// {(1,1), (0,1), (1,0), (1/2,3), (2,2/3)}.
std::vector<Params> default_params_grid();

/// Integer tableau counts indexed by (N_alpha, N_beta); evaluating at any
/// Params gives the total unnormalized weight.
class WeightPolynomial {
 public:
  explicit WeightPolynomial(int n = 1);

  int size() const noexcept { return n_; }
  void add(int alphas, int betas, std::uint64_t times = 1);
  void add(const Tableau& t) { add(t.count(Symbol::Alpha), t.count(Symbol::Beta)); }
  void merge(const WeightPolynomial& other);

  std::uint64_t coefficient(int alphas, int betas) const;
  std::uint64_t tableaux() const noexcept;
  bool empty() const noexcept { return tableaux() == 0; }

  /// Sum of a^(n - N_alpha) b^(n - N_beta).
  Rational weight(const Params& p) const;
  /// weight / (a + b + n - 1)_n.
  Rational probability(const Params& p) const;

  friend bool operator==(const WeightPolynomial&, const WeightPolynomial&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> counts_;
};

/// (a + b + n - 1)_n.
Rational normalized_partition(int n, const Params& p);

Rational unnormalized_weight(const Tableau& t, const Params& p);

/// Throws std::invalid_argument for an invalid tableau.
Rational probability(const Tableau& t, const Params& p);

/// Closed forms on the first diagonal: Alpha (j + b - 1)/(n + a + b - 1),
/// Beta (n - j + a)/(n + a + b - 1). Throws std::out_of_range unless 1 <= j <= n.
Rational marginal_first_diagonal(int n, const Params& p, int j, Symbol s);

/// Closed forms for k >= 2: Alpha (b + j - 1)/(n - k + a + b + 1)_2,
/// Beta (n - k - j + a + 1)/(n - k + a + b + 1)_2, Empty the remainder.
Rational marginal_kth_diagonal(int n, const Params& p, int k, int j, Content c);

/// Dispatches on e.k; an Empty event on the first diagonal has measure 0.
Rational marginal(int n, const Params& p, const DiagonalEvent& e);

/// One enumeration pass recording a weight polynomial for every
/// (box, content) pair; brute-force marginals of all boxes at once.
class BoxCensus {
 public:
  explicit BoxCensus(int n);

  int size() const noexcept { return n_; }
  const WeightPolynomial& polynomial(Box b, Content c) const;
  Rational probability(Box b, Content c, const Params& p) const;

 private:
  int n_;
  std::vector<WeightPolynomial> polys_;  // [storage index][Cell]
};

WeightPolynomial event_polynomial(int n, const EventSet& events);

/// Brute-force measure of the conjunction of `events`.
Rational joint_probability(int n, const Params& p, const EventSet& events);

struct SubtableauReport {
  int n = 0;
  int i = 1;
  int j = 1;
  int sub_size = 0;
  Params sub_params;
  std::size_t states = 0;  // distinct subtableaux compared
  bool all_valid = true;   // every image is a valid tableau
  Rational max_discrepancy{0};

  bool ok() const { return all_valid && max_discrepancy == 0; }
};

/// Compares the pushforward of P_{n,p} under S -> S[i, j] with
/// P_{n-i-j+2, (a+i-1, b+j-1)}. Throws std::out_of_range for a bad corner.
SubtableauReport subtableau_law_check(int n, const Params& p, int i, int j);

/// One enumeration pass shared by all params.
std::vector<SubtableauReport> subtableau_law_check(int n, const std::vector<Params>& grid,
                                                   int i, int j);

}  // namespace staircase
