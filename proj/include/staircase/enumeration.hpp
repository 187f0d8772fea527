#pragma once

// Exhaustive generation of valid tableaux.
//
// Boxes are assigned in storage order (column by column from the west,
// top to bottom within a column), trying Alpha, then Beta, then Empty at
// each box. Two flags make every partial assignment extendable by the
// filling rules alone:
//   column_used[c]  a symbol already sits in column c, so an Alpha
//                   further down would have a symbol north of it;
//   row_used[r]     a symbol already sits west in row r, so a Beta
//                   would have a symbol west of it.
// Leaves are visited in that deterministic lexicographic order.

#include "staircase/tableau.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace staircase {

/// "Box j on diagonal k holds `content`" (content std::nullopt = empty).
struct DiagonalEvent {
  int k = 1;
  int j = 1;
  Content content;

  friend bool operator==(const DiagonalEvent&, const DiagonalEvent&) = default;
};

using EventSet = std::vector<DiagonalEvent>;

enum class Requirement : std::uint8_t { Any, Alpha, Beta, Empty };

/// Per-box requirements in storage order. Throws std::out_of_range for an
/// address outside size n and std::invalid_argument for two events that
/// disagree on one box.
std::vector<Requirement> resolve_events(int n, std::span<const DiagonalEvent> events);

/// Cells of the first prefix.size() boxes in storage order.
using Prefix = std::vector<detail::Cell>;

/// A disjunction of prefixes; the partitions returned together cover every
/// valid tableau exactly once.
struct Partition {
  std::vector<Prefix> prefixes;
};

/// Splits the search space into at most `width` partitions by fixing the
/// shortest prefix depth that yields at least `width` feasible prefixes,
/// dealt round-robin. Throws std::invalid_argument for width < 1.
std::vector<Partition> partition_search_space(int n, int width);

struct SymbolCounts {
  int alpha = 0;
  int beta = 0;

  friend bool operator==(const SymbolCounts&, const SymbolCounts&) = default;
};

SymbolCounts count_symbols(const Tableau& t) noexcept;

namespace detail {

class Search {
 public:
  Search(int n, std::vector<Requirement> requirements);

  template <class Visitor>
  void run(Visitor& visit) {
    place(0, visit);
  }

  /// Visits every feasible assignment of the first `depth` boxes.
  void prefixes(int depth, const std::function<void(std::span<const Cell>)>& visit);

 private:
  template <class Visitor>
  void place(int index, Visitor& visit) {
    if (index == total_) {
      visit(static_cast<const Tableau&>(work_));
      return;
    }
    const Box b = boxes_[index];
    const Requirement req = requirements_[index];
    Cell& cell = work_.cells_[index];
    if (!column_used_[b.col] && (req == Requirement::Any || req == Requirement::Alpha)) {
      const bool row_before = row_used_[b.row];
      cell = Cell::Alpha;
      ++work_.alphas_;
      column_used_[b.col] = row_used_[b.row] = true;
      place(index + 1, visit);
      cell = Cell::Empty;
      --work_.alphas_;
      column_used_[b.col] = false;
      row_used_[b.row] = row_before;
    }
    if (!row_used_[b.row] && (req == Requirement::Any || req == Requirement::Beta)) {
      const bool column_before = column_used_[b.col];
      cell = Cell::Beta;
      ++work_.betas_;
      column_used_[b.col] = row_used_[b.row] = true;
      place(index + 1, visit);
      cell = Cell::Empty;
      --work_.betas_;
      column_used_[b.col] = column_before;
      row_used_[b.row] = false;
    }
    if (b.row + b.col != n_ + 1 && (req == Requirement::Any || req == Requirement::Empty)) {
      place(index + 1, visit);
    }
  }

  void place_prefix(int index, int depth, const std::function<void(std::span<const Cell>)>& visit);

  int n_;
  int total_;
  std::vector<Requirement> requirements_;
  std::vector<Box> boxes_;
  std::vector<char> column_used_;
  std::vector<char> row_used_;
  Tableau work_;
};

/// Requirements with the prefix cells pinned; false when the prefix
/// contradicts an event.
bool pin_prefix(std::vector<Requirement>& requirements, const Prefix& prefix);

}  // namespace detail

/// Calls visit(const Tableau&) for every valid tableau of size n that is
/// consistent with `events`. The reference is only valid during the call.
template <class Visitor>
void for_each_tableau(int n, const EventSet& events, Visitor&& visit) {
  detail::Search search(n, resolve_events(n, events));
  search.run(visit);
}

template <class Visitor>
void for_each_tableau(int n, Visitor&& visit) {
  for_each_tableau(n, EventSet{}, visit);
}

template <class Visitor>
void for_each_tableau(int n, const Partition& part, const EventSet& events, Visitor&& visit) {
  const auto base = resolve_events(n, events);
  for (const auto& prefix : part.prefixes) {
    auto req = base;
    if (!detail::pin_prefix(req, prefix)) continue;
    detail::Search search(n, std::move(req));
    search.run(visit);
  }
}

std::uint64_t count_tableaux(int n, const EventSet& events = {});

/// Materialized enumeration; throws std::invalid_argument for n > 8.
std::vector<Tableau> materialize(int n, const EventSet& events = {});

/// Runs one accumulator per partition on its own thread and merges them
/// in partition order. Acc must be copy-constructible from `init` and
/// provide merge(const Acc&); step(Acc&, const Tableau&) folds a leaf.
template <class Acc, class Step>
Acc accumulate_tableaux(int n, const EventSet& events, const Acc& init, Step step,
                        int workers = 0) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (workers == 1) {
    Acc acc = init;
    for_each_tableau(n, events, [&](const Tableau& t) { step(acc, t); });
    return acc;
  }
  const auto parts = partition_search_space(n, workers);
  std::vector<Acc> partial(parts.size(), init);
  {
    std::vector<std::jthread> pool;
    pool.reserve(parts.size());
    for (std::size_t w = 0; w < parts.size(); ++w) {
      pool.emplace_back([&, w] {
        for_each_tableau(n, parts[w], events, [&](const Tableau& t) { step(partial[w], t); });
      });
    }
  }
  Acc acc = init;
  for (const auto& p : partial) acc.merge(p);
  return acc;
}

}  // namespace staircase
