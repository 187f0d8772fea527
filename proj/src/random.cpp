#include "staircase/random.hpp"

#include <array>
#include <limits>
#include <stdexcept>

namespace staircase {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); i += 2) {
    const auto v = splitmix64(state);
    words[i] = static_cast<std::uint32_t>(v);
    words[i + 1] = static_cast<std::uint32_t>(v >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

Integer uniform_below(Rng& rng, const Integer& bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if (bound <= std::numeric_limits<std::uint64_t>::max()) {
    std::uniform_int_distribution<std::uint64_t> dist(0, bound.convert_to<std::uint64_t>() - 1);
    return Integer(dist(rng));
  }
  const auto bits = msb(bound) + 1;
  for (;;) {
    Integer x = 0;
    for (unsigned filled = 0; filled < bits; filled += 64) x = (x << 64) | Integer(rng());
    x >>= static_cast<unsigned>((bits + 63) / 64 * 64 - bits);
    if (x < bound) return x;
  }
}

bool bernoulli(Rng& rng, const Rational& p) {
  if (p < 0 || p > 1) throw std::invalid_argument("probability outside [0, 1]");
  if (p == 0) return false;
  if (p == 1) return true;
  return uniform_below(rng, denominator(p)) < numerator(p);
}

}  // namespace staircase
