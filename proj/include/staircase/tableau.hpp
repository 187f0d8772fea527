#pragma once

// Staircase tableaux of shape (n, n-1, ..., 1).
//
// Boxes are addressed (row, col), 1-indexed from the NW corner, with
// row + col <= n + 1. Diagonal k is the set of boxes with
// row + col = n - k + 2; diagonal 1 is the SE boundary and must be filled.

#include "staircase/random.hpp"
#include "staircase/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace staircase {

enum class Symbol : std::uint8_t { Alpha, Beta };

/// Content of a box: a symbol, or empty (std::nullopt).
using Content = std::optional<Symbol>;

enum class FourSymbol : std::uint8_t { Alpha, Beta, Gamma, Delta };

constexpr Symbol swapped(Symbol s) noexcept {
  return s == Symbol::Alpha ? Symbol::Beta : Symbol::Alpha;
}

constexpr Content swapped(Content c) noexcept {
  return c ? Content{swapped(*c)} : Content{};
}

struct Box {
  int row = 1;
  int col = 1;

  friend auto operator<=>(const Box&, const Box&) = default;
};

/// Position j (counted by column) on diagonal k.
struct DiagonalAddress {
  int k = 1;
  int j = 1;

  friend auto operator<=>(const DiagonalAddress&, const DiagonalAddress&) = default;
};

constexpr int box_count(int n) noexcept { return n * (n + 1) / 2; }

/// Diagonal index of a box: n - row - col + 2.
constexpr int diagonal_of(int n, Box b) noexcept { return n - b.row - b.col + 2; }

constexpr bool on_first_diagonal(int n, Box b) noexcept { return b.row + b.col == n + 1; }

/// Box (n - k - j + 2, j). Throws std::out_of_range unless
/// 1 <= k <= n and 1 <= j <= n - k + 1.
Box box_at(int n, DiagonalAddress addr);

DiagonalAddress address_of(int n, Box b);

/// The n - k + 1 boxes of diagonal k, by increasing column.
std::vector<Box> diagonal_boxes(int n, int k);

/// Storage order: column by column from the west, top to bottom.
/// This is also the order in which the enumerator assigns boxes.
constexpr int storage_index(int n, Box b) noexcept {
  const int c = b.col - 1;
  return c * (n + 1) - c * (c + 1) / 2 + (b.row - 1);
}

Box storage_box(int n, int index);

namespace detail {
class Search;
enum class Cell : std::uint8_t { Empty = 0, Alpha = 1, Beta = 2 };

constexpr Cell to_cell(Content c) noexcept {
  if (!c) return Cell::Empty;
  return *c == Symbol::Alpha ? Cell::Alpha : Cell::Beta;
}
constexpr Content to_content(Cell c) noexcept {
  switch (c) {
    case Cell::Alpha: return Symbol::Alpha;
    case Cell::Beta: return Symbol::Beta;
    default: return std::nullopt;
  }
}
}  // namespace detail

/// An immutable size-n staircase filling. Validity is not enforced on
/// construction; see is_valid().
class Tableau {
 public:
  using Cell = detail::Cell;

  /// Throws std::invalid_argument for n < 1.
  static Tableau empty(int n);

  /// Builds from storage-order cells. Throws on a size mismatch.
  static Tableau from_cells(int n, std::vector<Cell> cells);

  int size() const noexcept { return n_; }
  bool contains(Box b) const noexcept {
    return b.row >= 1 && b.col >= 1 && b.row + b.col <= n_ + 1;
  }

  /// Throws std::out_of_range outside the staircase.
  Content at(Box b) const;
  Content at(DiagonalAddress addr) const { return at(box_at(n_, addr)); }

  /// Copy with one box replaced.
  Tableau with(Box b, Content c) const;

  int count(Symbol s) const noexcept { return s == Symbol::Alpha ? alphas_ : betas_; }
  int symbol_count() const noexcept { return alphas_ + betas_; }

  std::span<const Cell> cells() const noexcept { return cells_; }

  friend bool operator==(const Tableau&, const Tableau&) = default;
  friend auto operator<=>(const Tableau& x, const Tableau& y) {
    if (auto c = x.n_ <=> y.n_; c != 0) return c;
    return x.cells_ <=> y.cells_;
  }

 private:
  Tableau(int n, std::vector<Cell> cells);
  void recount() noexcept;

  int n_ = 0;
  std::vector<Cell> cells_;
  int alphas_ = 0;
  int betas_ = 0;

  friend class detail::Search;
};

/// First diagonal filled; all boxes north of an Alpha empty; all boxes
/// west of a Beta empty.
bool is_valid(const Tableau& t);

/// Transpose and exchange Alpha with Beta.
Tableau involution(const Tableau& t);

/// The subtableau whose NW corner is box (i, j) of t; its size is
/// n - i - j + 2. Throws std::out_of_range for a corner outside t.
Tableau subtableau(const Tableau& t, int i, int j);

class FourSymbolTableau {
 public:
  FourSymbolTableau(int n, std::vector<std::optional<FourSymbol>> cells);

  int size() const noexcept { return n_; }
  std::optional<FourSymbol> at(Box b) const;
  int count(FourSymbol s) const noexcept;

  /// Gamma -> Alpha, Delta -> Beta.
  Tableau reduced() const;

  friend bool operator==(const FourSymbolTableau&, const FourSymbolTableau&) = default;

 private:
  int n_;
  std::vector<std::optional<FourSymbol>> cells_;
};

/// Replaces each Alpha by Gamma with probability p_gamma and each Beta by
/// Delta with probability p_delta, independently. Precondition: t valid;
/// probabilities in [0, 1] (std::invalid_argument otherwise).
FourSymbolTableau to_four_symbol(const Tableau& t, const Rational& p_gamma,
                                 const Rational& p_delta, Rng& rng);

}  // namespace staircase
