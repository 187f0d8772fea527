#pragma once

#include "staircase/rational.hpp"

#include <cstdint>
#include <random>

namespace staircase {

/// Seedable generator. Streams split from one seed are derived by
/// make_rng(seed, stream) with distinct stream ids.
using Rng = std::mt19937_64;

/// Seeds a generator from (seed, stream) through a SplitMix64 expansion
/// fed into std::seed_seq. Identical arguments give identical streams.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Uniform integer in [0, bound). Requires bound > 0.
Integer uniform_below(Rng& rng, const Integer& bound);

/// Exact Bernoulli draw with rational success probability p in [0, 1].
bool bernoulli(Rng& rng, const Rational& p);

}  // namespace staircase
