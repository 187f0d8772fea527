#include "staircase/sampling.hpp"

#include "staircase/enumeration.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

namespace staircase {

using detail::Cell;

namespace {

Integer integer_power(const Integer& x, int e) {
  Integer out = 1;
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

double stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0;
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

ExactSampler::ExactSampler(int n, const Params& p) : n_(n) {
  if (n < 1 || n > kExactSamplerMaxN) {
    throw std::invalid_argument("exact sampling is limited to 1 <= n <= " +
                                std::to_string(kExactSamplerMaxN));
  }
  const int side = n + 1;
  std::vector<std::vector<Packed>> by_class(side * side);
  for_each_tableau(n, [&](const Tableau& t) {
    Packed word{0, 0};
    const auto cells = t.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      word[i / 32] |= static_cast<std::uint64_t>(cells[i]) << (2 * (i % 32));
    }
    by_class[t.count(Symbol::Alpha) * side + t.count(Symbol::Beta)].push_back(word);
  });
  // Weight a^(n-i) b^(n-j) scaled by the common factor (den a)^n (den b)^n.
  const Integer pa = numerator(p.a), qa = denominator(p.a);
  const Integer pb = numerator(p.b), qb = denominator(p.b);
  total_ = 0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      auto& members = by_class[i * side + j];
      if (members.empty()) continue;
      const Integer w = integer_power(pa, n - i) * integer_power(qa, i) *
                        integer_power(pb, n - j) * integer_power(qb, j) *
                        Integer(members.size());
      if (w == 0) continue;
      total_ += w;
      classes_.push_back({total_, std::move(members)});
    }
  }
}

Tableau ExactSampler::draw(Rng& rng) const {
  const Integer u = uniform_below(rng, total_);
  auto it = std::upper_bound(classes_.begin(), classes_.end(), u,
                             [](const Integer& x, const Class& c) { return x < c.cumulative; });
  const auto& members = it->members;
  const auto pick = uniform_below(rng, Integer(members.size())).convert_to<std::size_t>();
  const Packed& word = members[pick];
  std::vector<Cell> cells(box_count(n_));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i] = static_cast<Cell>((word[i / 32] >> (2 * (i % 32))) & 3u);
  }
  return Tableau::from_cells(n_, std::move(cells));
}

bool move_keeps_valid(const Tableau& t, Box b, Content c) {
  const int n = t.size();
  if (!t.contains(b)) throw std::out_of_range("box outside staircase");
  if (!c) return !on_first_diagonal(n, b);
  for (int r = b.row + 1; r + b.col <= n + 1; ++r) {
    if (t.at(Box{r, b.col}) == Symbol::Alpha) return false;
  }
  for (int col = b.col + 1; b.row + col <= n + 1; ++col) {
    if (t.at(Box{b.row, col}) == Symbol::Beta) return false;
  }
  if (*c == Symbol::Alpha) {
    for (int r = 1; r < b.row; ++r) {
      if (t.at(Box{r, b.col})) return false;
    }
  } else {
    for (int col = 1; col < b.col; ++col) {
      if (t.at(Box{b.row, col})) return false;
    }
  }
  return true;
}

Tableau beta_diagonal_tableau(int n) {
  auto t = Tableau::empty(n);
  for (Box b : diagonal_boxes(n, 1)) t = t.with(b, Symbol::Beta);
  return t;
}

ChainSampler::ChainSampler(int n, const Params& p, Rng rng, std::optional<Tableau> start)
    : n_(n), p_(p), rng_(std::move(rng)), state_(start ? *start : beta_diagonal_tableau(n)) {
  if (p.a <= 0 || p.b <= 0) throw std::invalid_argument("the chain sampler requires a, b > 0");
  if (state_.size() != n || !is_valid(state_)) {
    throw std::invalid_argument("chain start must be a valid tableau of size n");
  }
  ratio_.resize(9);
  for (int da = -1; da <= 1; ++da) {
    for (int db = -1; db <= 1; ++db) {
      ratio_[(da + 1) * 3 + db + 1] = power(p.a, -da) * power(p.b, -db);
    }
  }
}

bool ChainSampler::step() {
  ++proposals_;
  std::uniform_int_distribution<int> pick_box(0, box_count(n_) - 1);
  const Box b = storage_box(n_, pick_box(rng_));
  const Content cur = state_.at(b);
  Content next;
  if (on_first_diagonal(n_, b)) {
    next = swapped(cur);
  } else {
    std::array<Content, 2> others;
    int i = 0;
    for (Content c : {Content{}, Content{Symbol::Alpha}, Content{Symbol::Beta}}) {
      if (c != cur) others[i++] = c;
    }
    next = others[rng_() & 1u];
  }
  if (!move_keeps_valid(state_, b, next)) return false;
  const int da = (next == Symbol::Alpha) - (cur == Symbol::Alpha);
  const int db = (next == Symbol::Beta) - (cur == Symbol::Beta);
  const Rational& ratio = ratio_[(da + 1) * 3 + db + 1];
  if (ratio < 1 && !bernoulli(rng_, ratio)) return false;
  state_ = state_.with(b, next);
  ++accepted_;
  return true;
}

void ChainSampler::advance(std::uint64_t steps) {
  for (std::uint64_t i = 0; i < steps; ++i) step();
}

std::vector<Tableau> sample(const SamplerConfig& cfg, std::size_t count) {
  std::vector<Tableau> out;
  out.reserve(count);
  if (cfg.mode == SamplerMode::Exact) {
    const ExactSampler sampler(cfg.n, cfg.params);
    auto rng = make_rng(cfg.seed);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.draw(rng));
    return out;
  }
  if (cfg.chain_burn_in < 0 || cfg.chain_thin < 1) {
    throw std::invalid_argument("chain burn-in must be >= 0 and thinning >= 1");
  }
  ChainSampler chain(cfg.n, cfg.params, make_rng(cfg.seed), cfg.chain_start);
  chain.advance(cfg.chain_burn_in);
  for (std::size_t i = 0; i < count; ++i) {
    chain.advance(cfg.chain_thin);
    out.push_back(chain.state());
  }
  return out;
}

bool move_graph_connected(int n) {
  if (n > 6) throw std::invalid_argument("move-graph check is limited to n <= 6");
  const auto all = materialize(n);
  std::map<Tableau, bool> seen;
  for (const auto& t : all) seen.emplace(t, false);
  std::deque<Tableau> queue{all.front()};
  seen[all.front()] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const Tableau cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < box_count(n); ++i) {
      const Box b = storage_box(n, i);
      for (Content c : {Content{}, Content{Symbol::Alpha}, Content{Symbol::Beta}}) {
        if (c == cur.at(b)) continue;
        const Tableau next = cur.with(b, c);
        if (!is_valid(next)) continue;
        auto it = seen.find(next);
        if (it == seen.end()) return false;
        if (!it->second) {
          it->second = true;
          ++reached;
          queue.push_back(next);
        }
      }
    }
  }
  return reached == all.size();
}

ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<Rational>& probabilities) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw std::invalid_argument("observed and expected cells differ in number");
  }
  double total = 0;
  for (auto o : observed) total += static_cast<double>(o);
  std::vector<std::pair<double, double>> cells;  // (observed, expected)
  double pooled_o = 0, pooled_e = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = total * probabilities[i].convert_to<double>();
    const double o = static_cast<double>(observed[i]);
    if (e < 5) {
      pooled_o += o;
      pooled_e += e;
    } else {
      cells.emplace_back(o, e);
    }
  }
  if (pooled_e > 0 || pooled_o > 0) cells.emplace_back(pooled_o, pooled_e);
  ChiSquareResult out;
  out.cells = static_cast<int>(cells.size());
  out.dof = out.cells - 1;
  for (const auto& [o, e] : cells) {
    if (e > 0) {
      out.statistic += (o - e) * (o - e) / e;
    } else if (o > 0) {
      out.statistic = INFINITY;
    }
  }
  if (out.dof < 1) return out;
  if (std::isinf(out.statistic)) {
    out.p_value = 0;
    return out;
  }
  const boost::math::chi_squared dist(out.dof);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

int alpha_count(const Tableau& t, int k) {
  int c = 0;
  for (Box b : diagonal_boxes(t.size(), k)) c += t.at(b) == Symbol::Alpha;
  return c;
}

PoissonDemo empirical_poisson_demo(int n, const Params& p, int k, std::size_t samples,
                                   std::uint64_t seed, int burn_in, int thin, int resamples) {
  if (samples == 0) throw std::invalid_argument("demo needs at least one sample");
  ChainSampler chain(n, p, make_rng(seed), std::nullopt);
  chain.advance(burn_in);
  std::vector<int> xs;
  xs.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    chain.advance(thin);
    xs.push_back(alpha_count(chain.state(), k));
  }

  auto summarize = [&](const std::vector<int>& values, double& mean, double& zero, double& tv,
                       std::map<int, std::uint64_t>* hist) {
    std::map<int, std::uint64_t> h;
    double s = 0;
    for (int x : values) {
      ++h[x];
      s += x;
    }
    mean = s / static_cast<double>(values.size());
    zero = static_cast<double>(h[0]) / static_cast<double>(values.size());
    CountDist d;
    for (const auto& [c, cnt] : h) {
      if (cnt) d.mass.emplace(c, Rational(Integer(cnt), Integer(values.size())));
    }
    tv = tv_to_poisson(d).convert_to<double>();
    if (hist) {
      for (auto it = h.begin(); it != h.end();) it = it->second ? std::next(it) : h.erase(it);
      *hist = std::move(h);
    }
  };

  PoissonDemo demo;
  demo.n = n;
  demo.k = k;
  demo.samples = samples;
  summarize(xs, demo.mean, demo.zero_mass, demo.tv, &demo.histogram);
  auto rng = make_rng(seed, 1);
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  std::vector<double> means, zeros, tvs;
  std::vector<int> resample(xs.size());
  for (int b = 0; b < resamples; ++b) {
    for (auto& x : resample) x = xs[pick(rng)];
    double m, z, t;
    summarize(resample, m, z, t, nullptr);
    means.push_back(m);
    zeros.push_back(z);
    tvs.push_back(t);
  }
  demo.mean_se = stddev(means);
  demo.zero_mass_se = stddev(zeros);
  demo.tv_se = stddev(tvs);
  return demo;
}

}  // namespace staircase
