#pragma once

#include <numeric>
#include <span>
#include <vector>

#include "scenopt/error.hpp"

namespace scenopt {

/// Index subset I with solve(I) = solve(full set), minimal under single removals.
struct InvariantSet {
  std::vector<std::size_t> indices;  // sorted, 0-based
  std::size_t cardinality() const { return indices.size(); }
};

/// Greedy a-posteriori extraction.
///
/// Passes over the retained indices in ascending order, tentatively drops
/// each one, re-solves, and keeps the drop iff `same(solve(trial), full)`.
/// Passes repeat until none succeeds, which leaves I minimal under single
/// removals. `solve` maps a sorted index list to a solution and must be
/// deterministic; a mismatch between two solves of the full set raises
/// ConsistencyError.
template <class Solve, class Same>
InvariantSet greedy_invariant_set(std::size_t n, Solve&& solve, Same&& same) {
  std::vector<std::size_t> current(n);
  std::iota(current.begin(), current.end(), std::size_t{0});
  const auto full = solve(std::span<const std::size_t>(current));
  if (!same(solve(std::span<const std::size_t>(current)), full)) {
    throw ConsistencyError("solver returned different solutions on identical input");
  }
  bool changed = true;
  std::vector<std::size_t> trial;
  while (changed && current.size() > 1) {
    changed = false;
    // An empty subproblem has no solution, so the last index always stays.
    for (std::size_t pos = 0; pos < current.size() && current.size() > 1;) {
      trial.assign(current.begin(), current.end());
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
      if (same(solve(std::span<const std::size_t>(trial)), full)) {
        current.swap(trial);
        changed = true;
      } else {
        ++pos;
      }
    }
  }
  return InvariantSet{std::move(current)};
}

}  // namespace scenopt
