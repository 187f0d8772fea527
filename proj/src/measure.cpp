#include "staircase/measure.hpp"

#include <boost/multiprecision/number.hpp>

#include <map>
#include <stdexcept>

namespace staircase {

Params Params::make(Rational a, Rational b) {
  if (a < 0 || b < 0) throw std::invalid_argument("parameters a, b must be nonnegative");
  if (a == 0 && b == 0) throw std::invalid_argument("a = b = 0 gives a zero partition function");
  return {std::move(a), std::move(b)};
}

Params Params::parse(std::string_view a, std::string_view b) {
  return make(parse_rational(a), parse_rational(b));
}

std::string Params::label() const { return "a=" + to_string(a) + ",b=" + to_string(b); }

std::vector<Params> default_params_grid() {
  return {Params::make(1, 1), Params::make(0, 1), Params::make(1, 0),
          Params::make(Rational(1, 2), 3), Params::make(2, Rational(2, 3))};
}

WeightPolynomial::WeightPolynomial(int n) : n_(n), counts_((n + 1) * (n + 1), 0) {
  if (n < 1) throw std::invalid_argument("tableau size must be at least 1");
}

void WeightPolynomial::add(int alphas, int betas, std::uint64_t times) {
  if (alphas < 0 || alphas > n_ || betas < 0 || betas > n_) {
    throw std::out_of_range("symbol counts outside the degree range");
  }
  counts_[alphas * (n_ + 1) + betas] += times;
}

void WeightPolynomial::merge(const WeightPolynomial& other) {
  if (other.n_ != n_) throw std::invalid_argument("merging polynomials of different sizes");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

std::uint64_t WeightPolynomial::coefficient(int alphas, int betas) const {
  if (alphas < 0 || alphas > n_ || betas < 0 || betas > n_) return 0;
  return counts_[alphas * (n_ + 1) + betas];
}

std::uint64_t WeightPolynomial::tableaux() const noexcept {
  std::uint64_t total = 0;
  for (auto c : counts_) total += c;
  return total;
}

Rational WeightPolynomial::weight(const Params& p) const {
  std::vector<Rational> pa(n_ + 1), pb(n_ + 1);
  for (int e = 0; e <= n_; ++e) {
    pa[e] = power(p.a, e);
    pb[e] = power(p.b, e);
  }
  Rational total = 0;
  for (int i = 0; i <= n_; ++i) {
    for (int j = 0; j <= n_; ++j) {
      const auto c = counts_[i * (n_ + 1) + j];
      if (c == 0) continue;
      total += Rational(Integer(c)) * pa[n_ - i] * pb[n_ - j];
    }
  }
  return total;
}

Rational WeightPolynomial::probability(const Params& p) const {
  return weight(p) / normalized_partition(n_, p);
}

Rational normalized_partition(int n, const Params& p) {
  if (n < 1) throw std::invalid_argument("tableau size must be at least 1");
  return falling_factorial(p.a + p.b + n - 1, n);
}

Rational unnormalized_weight(const Tableau& t, const Params& p) {
  const int n = t.size();
  return power(p.a, n - t.count(Symbol::Alpha)) * power(p.b, n - t.count(Symbol::Beta));
}

Rational probability(const Tableau& t, const Params& p) {
  if (!is_valid(t)) throw std::invalid_argument("probability of an invalid tableau");
  return unnormalized_weight(t, p) / normalized_partition(t.size(), p);
}

Rational marginal_first_diagonal(int n, const Params& p, int j, Symbol s) {
  if (j < 1 || j > n) throw std::out_of_range("first-diagonal position out of range");
  const Rational den = n + p.a + p.b - 1;
  if (s == Symbol::Alpha) return (j + p.b - 1) / den;
  return (n - j + p.a) / den;
}

Rational marginal_kth_diagonal(int n, const Params& p, int k, int j, Content c) {
  if (k < 2 || k > n) throw std::out_of_range("diagonal index must satisfy 2 <= k <= n");
  if (j < 1 || j > n - k + 1) throw std::out_of_range("diagonal position out of range");
  const Rational den = falling_factorial(n - k + p.a + p.b + 1, 2);
  const Rational alpha = (p.b + j - 1) / den;
  const Rational beta = (n - k - j + p.a + 1) / den;
  if (!c) return 1 - alpha - beta;
  return *c == Symbol::Alpha ? alpha : beta;
}

Rational marginal(int n, const Params& p, const DiagonalEvent& e) {
  if (e.k == 1) {
    if (!e.content) {
      box_at(n, {e.k, e.j});
      return 0;
    }
    return marginal_first_diagonal(n, p, e.j, *e.content);
  }
  return marginal_kth_diagonal(n, p, e.k, e.j, e.content);
}

BoxCensus::BoxCensus(int n) : n_(n), polys_(3 * box_count(n), WeightPolynomial(n)) {
  for_each_tableau(n, [&](const Tableau& t) {
    const int na = t.count(Symbol::Alpha);
    const int nb = t.count(Symbol::Beta);
    const auto cells = t.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      polys_[3 * i + static_cast<int>(cells[i])].add(na, nb);
    }
  });
}

const WeightPolynomial& BoxCensus::polynomial(Box b, Content c) const {
  if (b.row < 1 || b.col < 1 || b.row + b.col > n_ + 1) throw std::out_of_range("box outside staircase");
  return polys_[3 * storage_index(n_, b) + static_cast<int>(detail::to_cell(c))];
}

Rational BoxCensus::probability(Box b, Content c, const Params& p) const {
  return polynomial(b, c).probability(p);
}

WeightPolynomial event_polynomial(int n, const EventSet& events) {
  WeightPolynomial poly(n);
  for_each_tableau(n, events, [&](const Tableau& t) { poly.add(t); });
  return poly;
}

Rational joint_probability(int n, const Params& p, const EventSet& events) {
  return event_polynomial(n, events).probability(p);
}

std::vector<SubtableauReport> subtableau_law_check(int n, const std::vector<Params>& grid,
                                                   int i, int j) {
  if (i < 1 || j < 1 || i + j > n + 1) throw std::out_of_range("subtableau corner out of range");
  const int m = n - i - j + 2;
  std::map<Tableau, WeightPolynomial> pushforward;
  for_each_tableau(n, [&](const Tableau& t) {
    auto [it, fresh] = pushforward.try_emplace(subtableau(t, i, j), n);
    it->second.add(t);
  });

  std::vector<SubtableauReport> out;
  for (const auto& p : grid) {
    SubtableauReport rep{n, i, j, m, Params{p.a + i - 1, p.b + j - 1}};
    const Rational z = normalized_partition(n, p);
    std::map<Tableau, Rational> image;
    for (const auto& [s, poly] : pushforward) {
      if (!is_valid(s)) rep.all_valid = false;
      image.emplace(s, poly.weight(p) / z);
    }
    // Every size-m tableau, including those outside the image, is compared.
    for_each_tableau(m, [&](const Tableau& s) {
      const auto it = image.find(s);
      const Rational lhs = it == image.end() ? Rational(0) : it->second;
      const Rational d = abs(lhs - probability(s, rep.sub_params));
      if (d > rep.max_discrepancy) rep.max_discrepancy = d;
      ++rep.states;
    });
    out.push_back(std::move(rep));
  }
  return out;
}

SubtableauReport subtableau_law_check(int n, const Params& p, int i, int j) {
  return subtableau_law_check(n, std::vector<Params>{p}, i, j).front();
}

}  // namespace staircase
