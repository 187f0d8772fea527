#pragma once

// Random tableaux under the weighted measure: an exact sampler over the
// enumerated set for small n and a Metropolis chain for larger n.

#include "staircase/diagonal_stats.hpp"
#include "staircase/measure.hpp"
#include "staircase/random.hpp"
#include "staircase/tableau.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace staircase {

enum class SamplerMode { Exact, Chain };

struct SamplerConfig {
  int n = 1;
  Params params;
  std::uint64_t seed = 0;
  SamplerMode mode = SamplerMode::Exact;
  int chain_burn_in = 10000;
  int chain_thin = 100;
  std::optional<Tableau> chain_start;
};

inline constexpr int kExactSamplerMaxN = 9;

class ExactSampler {
 public:
  /// Throws std::invalid_argument for n > kExactSamplerMaxN.
  ExactSampler(int n, const Params& p);

  int size() const noexcept { return n_; }
  Tableau draw(Rng& rng) const;

 private:
  using Packed = std::array<std::uint64_t, 2>;
  struct Class {
    Integer cumulative;  // running total of integer class weights
    std::vector<Packed> members;
  };

  int n_;
  std::vector<Class> classes_;
  Integer total_;
};

/// Whether t.with(b, c) is valid, decided from the rows and columns of b
/// alone. Precondition: t valid.
bool move_keeps_valid(const Tableau& t, Box b, Content c);

/// First diagonal filled with Beta, everything else empty.
Tableau beta_diagonal_tableau(int n);

/// Metropolis chain. A proposal picks a uniform box; a first-diagonal box
/// swaps its symbol, any other box moves to one of its two other contents
/// with probability 1/2 each. Invalid proposals are rejected; valid ones
/// are accepted with probability min(1, a^-dN_alpha b^-dN_beta), exactly.
class ChainSampler {
 public:
  /// Requires a, b > 0 and a valid start (std::invalid_argument otherwise).
  ChainSampler(int n, const Params& p, Rng rng, std::optional<Tableau> start = std::nullopt);

  const Tableau& state() const noexcept { return state_; }
  bool step();
  void advance(std::uint64_t steps);

  std::uint64_t proposals() const noexcept { return proposals_; }
  std::uint64_t accepted() const noexcept { return accepted_; }

 private:
  int n_;
  Params p_;
  Rng rng_;
  Tableau state_;
  std::vector<Rational> ratio_;  // a^-da b^-db indexed by (da + 1) * 3 + (db + 1)
  std::uint64_t proposals_ = 0;
  std::uint64_t accepted_ = 0;
};

/// `count` draws following cfg; chain mode burns in once and thins between draws.
std::vector<Tableau> sample(const SamplerConfig& cfg, std::size_t count);

/// Every valid tableau of size n reaches every other through valid
/// single-box moves of the chain. Throws std::invalid_argument for n > 6.
bool move_graph_connected(int n);

struct ChiSquareResult {
  double statistic = 0;
  int cells = 0;  // after pooling
  int dof = 0;
  double p_value = 1;
};

/// Goodness of fit of observed counts to exact cell probabilities; cells
/// with expected count below 5 are pooled into one.
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<Rational>& probabilities);

struct PoissonDemo {
  int n = 0;
  int k = 0;
  std::size_t samples = 0;
  std::map<int, std::uint64_t> histogram;
  double mean = 0;
  double mean_se = 0;
  double zero_mass = 0;
  double zero_mass_se = 0;
  double tv = 0;  // empirical law vs Pois(1/2)
  double tv_se = 0;
};

/// Chain estimate of the Alpha-count law on diagonal k with bootstrap
/// standard errors from `resamples` resamples.
PoissonDemo empirical_poisson_demo(int n, const Params& p, int k, std::size_t samples,
                                   std::uint64_t seed, int burn_in, int thin,
                                   int resamples = 200);

/// Number of Alphas on diagonal k.
int alpha_count(const Tableau& t, int k);

}  // namespace staircase
