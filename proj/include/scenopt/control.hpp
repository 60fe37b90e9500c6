#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "scenopt/drift.hpp"
#include "scenopt/invariant.hpp"

namespace scenopt {

using ReachMatrix = Eigen::Matrix<double, 2, Eigen::Dynamic>;

/// Quantized-input control benchmark: drive x(T) = A^T x0 + R u to the origin
/// in the ∞-norm for every sampled A_(i), with u(t) drawn from a finite set.
struct ControlInstance {
  std::size_t horizon = 8;
  Vec2 x0 = Vec2(1.0, 1.0);
  std::vector<double> inputs = default_inputs();  // sorted ascending
  Vec2 b = Vec2(0.0, 0.5);
  std::vector<Mat2> scenarios;

  /// {-5, ..., 5}.
  static std::vector<double> default_inputs();
  /// Throws DomainError on an empty/unsorted input set or zero horizon.
  void validate() const;
};

/// Input sequence in stacked order u = [u(T−1), ..., u(0)], matching the
/// column order of R, with the attained worst-case ∞-norm h.
struct ControlSolution {
  std::vector<double> inputs;
  double objective = 0.0;

  bool operator==(const ControlSolution&) const = default;
};

enum class ControlStrategy { exhaustive, branch_and_bound };

struct ControlOptions {
  /// Largest |U|^T the exhaustive strategy will enumerate.
  double exhaustive_guard = 1e7;
};

/// R_(i) = [B, A B, ..., A^{T−1} B].
ReachMatrix build_reachability(const ControlInstance& instance, std::size_t scenario_index);

/// A_(i)^T x0.
Vec2 free_response(const ControlInstance& instance, std::size_t scenario_index);

/// Global minimizer over U^T of max_i ‖A_(i)^T x0 + R_(i) u‖_∞. Among equal
/// objectives the lexicographically smallest stacked sequence is returned, so
/// both strategies agree exactly (objective and sequence).
ControlSolution solve_control(const ControlInstance& instance, ControlStrategy strategy,
                              const ControlOptions& options = {});

/// Same problem restricted to the listed scenario indices.
ControlSolution solve_control(const ControlInstance& instance, std::span<const std::size_t> indices,
                              ControlStrategy strategy, const ControlOptions& options = {});

/// max_i ‖A_(i)^T x0 + R_(i) u‖_∞ with the solver's own summation order, so it
/// reproduces ControlSolution::objective bit for bit.
double control_objective(const ControlInstance& instance, std::span<const double> inputs);

/// Invariant set by greedy removal in ascending index order.
///
/// Same decisions as re-solving after every tentative removal, but each
/// re-solve goes through constraint generation: a small certificate K with
/// solve(K) = solve(S) is kept, and removing an index outside K cannot change
/// the solution (K ⊆ T ⊆ S pins both the objective and the tie-broken
/// minimizer), so only removals from K are re-solved, on small subsets.
struct ControlAnalysis {
  ControlSolution solution;
  InvariantSet invariant;
  std::vector<std::size_t> certificate;  // K, sorted, 0-based
};

ControlAnalysis analyze_control(const ControlInstance& instance, ControlStrategy strategy,
                                const ControlOptions& options = {});

/// analyze_control(...).invariant.
InvariantSet invariant_set_control(const ControlInstance& instance, ControlStrategy strategy,
                                   const ControlOptions& options = {});

/// Reference implementation: full re-solve after every tentative removal.
/// Quadratic in N solves; intended for cross-checks at small N.
InvariantSet invariant_set_control_naive(const ControlInstance& instance,
                                         ControlStrategy strategy,
                                         const ControlOptions& options = {});

/// solve(T) for the index set T via constraint generation seeded with `seed`
/// (a subset of T; may be empty). Returns the solution and the final K ⊆ T.
std::pair<ControlSolution, std::vector<std::size_t>> solve_control_generation(
    const ControlInstance& instance, std::span<const std::size_t> indices,
    std::span<const std::size_t> seed, ControlStrategy strategy,
    const ControlOptions& options = {});

/// Structure-of-arrays view of a scenario batch: free responses and R columns
/// laid out per coordinate so kernels sweep scenarios contiguously.
struct ControlTableau {
  std::size_t count = 0;
  std::size_t horizon = 0;
  std::vector<double> free0, free1;
  std::vector<double> col0, col1;  // column t of scenario i at [t * count + i]

  static ControlTableau build(const ControlInstance& instance, std::span<const Mat2> matrices);
  /// x(T) per scenario for the stacked input sequence, accumulated column by column.
  void terminal_states(std::span<const double> inputs, std::vector<double>& y0,
                       std::vector<double>& y1) const;
};

}  // namespace scenopt
