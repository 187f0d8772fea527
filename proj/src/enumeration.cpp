#include "staircase/enumeration.hpp"

#include <stdexcept>
#include <string>

namespace staircase {

using detail::Cell;

namespace {

Requirement requirement_for(Content c) {
  if (!c) return Requirement::Empty;
  return *c == Symbol::Alpha ? Requirement::Alpha : Requirement::Beta;
}

Requirement requirement_for(Cell c) {
  switch (c) {
    case Cell::Alpha: return Requirement::Alpha;
    case Cell::Beta: return Requirement::Beta;
    default: return Requirement::Empty;
  }
}

}  // namespace

std::vector<Requirement> resolve_events(int n, std::span<const DiagonalEvent> events) {
  if (n < 1) throw std::invalid_argument("tableau size must be at least 1");
  std::vector<Requirement> req(box_count(n), Requirement::Any);
  for (const auto& e : events) {
    const Box b = box_at(n, {e.k, e.j});
    auto& slot = req[storage_index(n, b)];
    const auto want = requirement_for(e.content);
    if (slot != Requirement::Any && slot != want) {
      throw std::invalid_argument("contradictory events at (k=" + std::to_string(e.k) +
                                  ", j=" + std::to_string(e.j) + ")");
    }
    slot = want;
  }
  return req;
}

SymbolCounts count_symbols(const Tableau& t) noexcept {
  return {t.count(Symbol::Alpha), t.count(Symbol::Beta)};
}

namespace detail {

Search::Search(int n, std::vector<Requirement> requirements)
    : n_(n),
      total_(box_count(n)),
      requirements_(std::move(requirements)),
      column_used_(n + 2, 0),
      row_used_(n + 2, 0),
      work_(n, std::vector<Cell>(box_count(n), Cell::Empty)) {
  if (static_cast<int>(requirements_.size()) != total_) {
    throw std::invalid_argument("requirement vector does not match size");
  }
  boxes_.reserve(total_);
  for (int i = 0; i < total_; ++i) boxes_.push_back(storage_box(n, i));
}

void Search::prefixes(int depth, const std::function<void(std::span<const Cell>)>& visit) {
  place_prefix(0, depth, visit);
}

void Search::place_prefix(int index, int depth,
                          const std::function<void(std::span<const Cell>)>& visit) {
  if (index == depth) {
    visit(std::span<const Cell>(work_.cells_).first(depth));
    return;
  }
  // Same branching as place(), without the leaf visitor.
  const Box b = boxes_[index];
  Cell& cell = work_.cells_[index];
  if (!column_used_[b.col]) {
    const bool row_before = row_used_[b.row];
    cell = Cell::Alpha;
    column_used_[b.col] = row_used_[b.row] = true;
    place_prefix(index + 1, depth, visit);
    cell = Cell::Empty;
    column_used_[b.col] = false;
    row_used_[b.row] = row_before;
  }
  if (!row_used_[b.row]) {
    const bool column_before = column_used_[b.col];
    cell = Cell::Beta;
    column_used_[b.col] = row_used_[b.row] = true;
    place_prefix(index + 1, depth, visit);
    cell = Cell::Empty;
    column_used_[b.col] = column_before;
    row_used_[b.row] = false;
  }
  if (b.row + b.col != n_ + 1) place_prefix(index + 1, depth, visit);
}

bool pin_prefix(std::vector<Requirement>& requirements, const Prefix& prefix) {
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const auto want = requirement_for(prefix[i]);
    if (requirements[i] != Requirement::Any && requirements[i] != want) return false;
    requirements[i] = want;
  }
  return true;
}

}  // namespace detail

std::vector<Partition> partition_search_space(int n, int width) {
  if (width < 1) throw std::invalid_argument("partition width must be at least 1");
  if (width == 1) return {Partition{{Prefix{}}}};
  std::vector<Prefix> found;
  for (int depth = 1; depth <= box_count(n); ++depth) {
    found.clear();
    detail::Search search(n, std::vector<Requirement>(box_count(n), Requirement::Any));
    search.prefixes(depth, [&](std::span<const Cell> p) { found.emplace_back(p.begin(), p.end()); });
    if (static_cast<int>(found.size()) >= width) break;
  }
  const auto parts = std::min<std::size_t>(width, found.size());
  std::vector<Partition> out(parts);
  for (std::size_t i = 0; i < found.size(); ++i) out[i % parts].prefixes.push_back(std::move(found[i]));
  return out;
}

std::uint64_t count_tableaux(int n, const EventSet& events) {
  std::uint64_t count = 0;
  for_each_tableau(n, events, [&](const Tableau&) { ++count; });
  return count;
}

std::vector<Tableau> materialize(int n, const EventSet& events) {
  if (n > 8) throw std::invalid_argument("materialize is limited to n <= 8; stream instead");
  std::vector<Tableau> out;
  for_each_tableau(n, events, [&](const Tableau& t) { out.push_back(t); });
  return out;
}

}  // namespace staircase
