#pragma once

// Executable forms of the diagonal-decomposition machinery: the
// m-statistic, alpha-beta paths, the D region, D-connected symbols, and
// the C_{k,h} coefficients.
//
// Throughout, `columns` lists the positions j_1 < ... < j_r of symbols on
// diagonal k; their contents are read from the tableau.

#include "staircase/measure.hpp"
#include "staircase/tableau.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace staircase {

struct MStat {
  int m = 1;
  int k = 1;
  std::vector<int> j;
};

/// m = min{l : j_l <= j_{l+1} - k}, or r when no l qualifies. Throws
/// std::invalid_argument for an empty or non-increasing list.
MStat compute_m(std::span<const int> j, int k);

/// k + j_m - j_1, the size of the subtableau holding the first m symbols.
int hat_k(const MStat& s);

struct DRegion {
  std::vector<Box> boundary;  // from the first-diagonal Beta to the first-diagonal Alpha
  std::vector<Box> interior;
};

class DAnalysis {
 public:
  /// Throws std::out_of_range for a bad address and std::invalid_argument
  /// when an addressed box is empty or the tableau is invalid.
  DAnalysis(const Tableau& t, int k, std::span<const int> columns);

  const Tableau& tableau() const noexcept { return t_; }
  const MStat& m_stat() const noexcept { return m_; }
  int hat_k() const noexcept { return staircase::hat_k(m_); }

  /// Event boxes of the first m symbols.
  std::span<const Box> anchors() const noexcept { return anchors_; }

  /// Inside the subtableau spanned by the first m symbols.
  bool in_window(Box b) const noexcept;
  /// A symbol in the window, off the first diagonal and off diagonal k.
  bool is_candidate(Box b) const;

  /// Literal walk: stop on a box sharing a row or column with an anchor
  /// (appending that anchor), else an Alpha steps to the topmost
  /// off-diagonal Beta below it and a Beta to the nearest off-diagonal
  /// Alpha east of it. Stops on a repeat or when no step applies. Throws
  /// std::invalid_argument unless start is a candidate.
  std::vector<Box> ab_path(Box start) const;
  bool path_ends_on_d(Box start) const;

  /// Candidates sharing a row or column with an anchor, closed under
  /// shared rows and columns among candidates.
  std::set<Box> d_connected() const;
  std::set<Box> d_connected_by_paths() const;

  DRegion d_region() const;

 private:
  bool touches_anchor(Box b) const;

  Tableau t_;
  int n_;
  int k_;
  MStat m_;
  std::vector<Box> anchors_;
  int top_row_ = 1;
  int left_col_ = 1;
};

struct Lemma3Report {
  std::size_t d_connected = 0;
  int bound = 0;            // hat_k - m - 1
  bool closure_ok = true;   // row/column closure
  bool count_ok = true;     // |D| <= bound
  bool pairing_ok = true;   // injective opposite-symbol pairing on the first diagonal
  bool forced_ok = true;    // each diagonal-k symbol has its row Alpha and column Beta
  std::size_t path_divergence = 0;  // boxes where the walk disagrees with the closure

  bool ok() const { return closure_ok && count_ok && pairing_ok && forced_ok; }
};

Lemma3Report verify_lemma3(const Tableau& t, int k, std::span<const int> columns);

struct Lemma3Sweep {
  int n = 0;
  int k = 0;
  std::uint64_t cases = 0;
  std::uint64_t closure_failures = 0;
  std::uint64_t count_failures = 0;
  std::uint64_t pairing_failures = 0;
  std::uint64_t forced_failures = 0;
  std::uint64_t involution_mismatches = 0;
  std::uint64_t path_divergences = 0;  // informational
  std::size_t max_d_connected = 0;

  std::uint64_t violations() const {
    return closure_failures + count_failures + pairing_failures + forced_failures +
           involution_mismatches;
  }
};

/// Every valid tableau of size n and every set of at most max_r occupied
/// positions on diagonal k.
Lemma3Sweep lemma3_sweep(int n, int k, int max_r = 2);

struct CTable {
  int k = 2;
  std::vector<Integer> counts;  // counts[h]

  friend bool operator==(const CTable&, const CTable&) = default;
};

/// sum_h C_{k,h} b / (n + a + b - 1)_{h+2}.
Rational decomposition_value(const CTable& c, int n, const Params& p);

struct CExtraction {
  int k = 2;
  std::vector<int> ns;
  std::size_t equations = 0;
  int unknowns = 0;
  int rank = 0;
  std::vector<Rational> solution;
  bool consistent = false;  // every equation satisfied exactly
  bool integral = false;
  bool nonnegative = false;
  bool unit_constant = false;  // C_{k,0} = 1
  std::optional<CTable> table;

  bool ok() const { return table.has_value(); }
};

/// Solves P_n(Alpha at (k, 1)) = sum_h C_{k,h} b/(n+a+b-1)_{h+2} for
/// h = 0..k-2 over every n in `ns` and every params in `grid`, with exact
/// brute-force left-hand sides. Throws std::invalid_argument unless
/// k >= 2, there are at least k distinct n and each n >= k + 2.
CExtraction extract_c_table(int k, const std::vector<Params>& grid, std::vector<int> ns);

/// Distinct D-connected configurations in size-k tableaux with an Alpha
/// at box (1, 1), grouped by their size h.
CTable direct_c_table(int k);

struct HeldOutCheck {
  int n = 0;
  Rational brute;
  Rational predicted;
  bool equal = false;
};

HeldOutCheck held_out_check(const CTable& c, int n, const Params& p);

struct DecompositionCheck {
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

/// With an Alpha at (k, 1) followed by `tail` (diagonal-k events with
/// columns >= k + 1, so m = 1):
///   P_n(alpha_1, tail) = sum_h C_{k,h} b/(n+a+b-1)_{h+2} P_{n-h-2}(tail shifted by h+2).
DecompositionCheck alpha_decomposition_check(int n, const Params& p, int k, const CTable& c,
                                             const EventSet& tail);

}  // namespace staircase
