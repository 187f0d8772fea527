#include "staircase/tableau.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace staircase {

using detail::Cell;

Box box_at(int n, DiagonalAddress addr) {
  if (addr.k < 1 || addr.k > n || addr.j < 1 || addr.j > n - addr.k + 1) {
    throw std::out_of_range("diagonal address (k=" + std::to_string(addr.k) + ", j=" +
                            std::to_string(addr.j) + ") outside size " + std::to_string(n));
  }
  return {n - addr.k - addr.j + 2, addr.j};
}

DiagonalAddress address_of(int n, Box b) { return {diagonal_of(n, b), b.col}; }

std::vector<Box> diagonal_boxes(int n, int k) {
  if (k < 1 || k > n) throw std::out_of_range("diagonal index out of range");
  std::vector<Box> out;
  out.reserve(n - k + 1);
  for (int j = 1; j <= n - k + 1; ++j) out.push_back({n - k - j + 2, j});
  return out;
}

Box storage_box(int n, int index) {
  int col = 1;
  while (index >= n - col + 1) {
    index -= n - col + 1;
    ++col;
  }
  return {index + 1, col};
}

Tableau::Tableau(int n, std::vector<Cell> cells) : n_(n), cells_(std::move(cells)) { recount(); }

Tableau Tableau::empty(int n) {
  if (n < 1) throw std::invalid_argument("tableau size must be at least 1");
  return Tableau(n, std::vector<Cell>(box_count(n), Cell::Empty));
}

Tableau Tableau::from_cells(int n, std::vector<Cell> cells) {
  if (n < 1) throw std::invalid_argument("tableau size must be at least 1");
  if (static_cast<int>(cells.size()) != box_count(n)) {
    throw std::invalid_argument("cell count does not match staircase size");
  }
  return Tableau(n, std::move(cells));
}

void Tableau::recount() noexcept {
  alphas_ = betas_ = 0;
  for (Cell c : cells_) {
    alphas_ += c == Cell::Alpha;
    betas_ += c == Cell::Beta;
  }
}

Content Tableau::at(Box b) const {
  if (!contains(b)) {
    throw std::out_of_range("box (" + std::to_string(b.row) + "," + std::to_string(b.col) +
                            ") outside size " + std::to_string(n_));
  }
  return detail::to_content(cells_[storage_index(n_, b)]);
}

Tableau Tableau::with(Box b, Content c) const {
  if (!contains(b)) throw std::out_of_range("box outside staircase");
  auto cells = cells_;
  cells[storage_index(n_, b)] = detail::to_cell(c);
  return Tableau(n_, std::move(cells));
}

bool is_valid(const Tableau& t) {
  const int n = t.size();
  // Column scan top-down: an Alpha must be the first symbol of its column.
  // Row scan west-east: a Beta must be the first symbol of its row.
  for (int col = 1; col <= n; ++col) {
    bool seen = false;
    for (int row = 1; row <= n - col + 1; ++row) {
      const auto c = t.at(Box{row, col});
      if (c == Symbol::Alpha && seen) return false;
      seen = seen || c.has_value();
    }
    if (!t.at(Box{n - col + 1, col})) return false;
  }
  for (int row = 1; row <= n; ++row) {
    bool seen = false;
    for (int col = 1; col <= n - row + 1; ++col) {
      const auto c = t.at(Box{row, col});
      if (c == Symbol::Beta && seen) return false;
      seen = seen || c.has_value();
    }
  }
  return true;
}

Tableau involution(const Tableau& t) {
  const int n = t.size();
  std::vector<Cell> cells(box_count(n), Cell::Empty);
  for (int col = 1; col <= n; ++col) {
    for (int row = 1; row <= n - col + 1; ++row) {
      cells[storage_index(n, {col, row})] = detail::to_cell(swapped(t.at(Box{row, col})));
    }
  }
  return Tableau::from_cells(n, std::move(cells));
}

Tableau subtableau(const Tableau& t, int i, int j) {
  const int n = t.size();
  if (i < 1 || j < 1 || i + j > n + 1) throw std::out_of_range("subtableau corner outside tableau");
  const int m = n - i - j + 2;
  std::vector<Cell> cells(box_count(m), Cell::Empty);
  for (int col = 1; col <= m; ++col) {
    for (int row = 1; row <= m - col + 1; ++row) {
      cells[storage_index(m, {row, col})] =
          t.cells()[storage_index(n, {i + row - 1, j + col - 1})];
    }
  }
  return Tableau::from_cells(m, std::move(cells));
}

FourSymbolTableau::FourSymbolTableau(int n, std::vector<std::optional<FourSymbol>> cells)
    : n_(n), cells_(std::move(cells)) {
  if (n < 1 || static_cast<int>(cells_.size()) != box_count(n)) {
    throw std::invalid_argument("four-symbol tableau: bad shape");
  }
}

std::optional<FourSymbol> FourSymbolTableau::at(Box b) const {
  if (b.row < 1 || b.col < 1 || b.row + b.col > n_ + 1) throw std::out_of_range("box outside staircase");
  return cells_[storage_index(n_, b)];
}

int FourSymbolTableau::count(FourSymbol s) const noexcept {
  int c = 0;
  for (const auto& x : cells_) c += x == s;
  return c;
}

Tableau FourSymbolTableau::reduced() const {
  std::vector<Cell> cells(cells_.size(), Cell::Empty);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!cells_[i]) continue;
    const auto s = *cells_[i];
    cells[i] = (s == FourSymbol::Alpha || s == FourSymbol::Gamma) ? Cell::Alpha : Cell::Beta;
  }
  return Tableau::from_cells(n_, std::move(cells));
}

FourSymbolTableau to_four_symbol(const Tableau& t, const Rational& p_gamma,
                                 const Rational& p_delta, Rng& rng) {
  if (p_gamma < 0 || p_gamma > 1 || p_delta < 0 || p_delta > 1) {
    throw std::invalid_argument("replacement probabilities must lie in [0, 1]");
  }
  if (!is_valid(t)) throw std::invalid_argument("to_four_symbol requires a valid tableau");
  std::vector<std::optional<FourSymbol>> cells(t.cells().size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    switch (t.cells()[i]) {
      case Cell::Alpha:
        cells[i] = bernoulli(rng, p_gamma) ? FourSymbol::Gamma : FourSymbol::Alpha;
        break;
      case Cell::Beta:
        cells[i] = bernoulli(rng, p_delta) ? FourSymbol::Delta : FourSymbol::Beta;
        break;
      case Cell::Empty:
        break;
    }
  }
  return FourSymbolTableau(t.size(), std::move(cells));
}

}  // namespace staircase
