#include "scenopt/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "scenopt/error.hpp"
#include "scenopt/kernels.hpp"

namespace scenopt {

std::vector<double> ControlInstance::default_inputs() {
  std::vector<double> u;
  for (int k = -5; k <= 5; ++k) u.push_back(k);
  return u;
}

void ControlInstance::validate() const {
  if (horizon == 0) throw DomainError("control horizon must be positive");
  if (inputs.empty()) throw DomainError("input set must be nonempty");
  if (!std::is_sorted(inputs.begin(), inputs.end()) ||
      std::adjacent_find(inputs.begin(), inputs.end()) != inputs.end()) {
    throw DomainError("input set must be sorted ascending without duplicates");
  }
  for (double u : inputs) {
    if (!std::isfinite(u)) throw DomainError("inputs must be finite");
  }
  if (scenarios.empty()) throw DomainError("control instance has no scenarios");
}

ReachMatrix build_reachability(const ControlInstance& instance, std::size_t scenario_index) {
  const Mat2& a = instance.scenarios.at(scenario_index);
  ReachMatrix r(2, static_cast<Eigen::Index>(instance.horizon));
  Vec2 col = instance.b;
  for (std::size_t t = 0; t < instance.horizon; ++t) {
    r.col(static_cast<Eigen::Index>(t)) = col;
    col = a * col;
  }
  return r;
}

Vec2 free_response(const ControlInstance& instance, std::size_t scenario_index) {
  const Mat2& a = instance.scenarios.at(scenario_index);
  Vec2 v = instance.x0;
  for (std::size_t t = 0; t < instance.horizon; ++t) v = a * v;
  return v;
}

ControlTableau ControlTableau::build(const ControlInstance& instance,
                                     std::span<const Mat2> matrices) {
  ControlTableau tab;
  const std::size_t n = matrices.size();
  const std::size_t horizon = instance.horizon;
  tab.count = n;
  tab.horizon = horizon;
  tab.free0.resize(n);
  tab.free1.resize(n);
  tab.col0.resize(n * horizon);
  tab.col1.resize(n * horizon);
  for (std::size_t i = 0; i < n; ++i) {
    const Mat2& a = matrices[i];
    Vec2 v = instance.x0;
    for (std::size_t t = 0; t < horizon; ++t) v = a * v;
    tab.free0[i] = v(0);
    tab.free1[i] = v(1);
    Vec2 col = instance.b;
    for (std::size_t t = 0; t < horizon; ++t) {
      tab.col0[t * n + i] = col(0);
      tab.col1[t * n + i] = col(1);
      col = a * col;
    }
  }
  return tab;
}

void ControlTableau::terminal_states(std::span<const double> inputs, std::vector<double>& y0,
                                     std::vector<double>& y1) const {
  if (inputs.size() != horizon) throw DomainError("input sequence length must equal the horizon");
  y0 = free0;
  y1 = free1;
  const auto& k = kernels::active();
  for (std::size_t t = 0; t < horizon; ++t) {
    k.axpy2(y0.data(), y1.data(), y0.data(), y1.data(), col0.data() + t * count,
            col1.data() + t * count, inputs[t], count);
  }
}

namespace {

// Depth-first search over U^T in stacked order. Level j fixes u[j]; the
// partial state after level j is free + Σ_{t ≤ j} col_t·u[t], accumulated in
// that order for every strategy, so leaf objectives are identical bit for bit.
class Search {
 public:
  Search(const ControlTableau& tab, std::span<const double> inputs, bool prune)
      : tab_(tab), inputs_(inputs), prune_(prune), k_(kernels::active()) {
    const std::size_t n = tab.count;
    const std::size_t horizon = tab.horizon;
    const std::size_t m = inputs.size();
    y0_.assign(horizon * m * n, 0.0);
    y1_.assign(horizon * m * n, 0.0);
    current_.assign(horizon, 0.0);
    best_.assign(horizon, 0.0);
    if (prune_) build_suffix_bounds();
  }

  ControlSolution run() {
    if (prune_) seed_incumbent();
    descend(0, tab_.free0.data(), tab_.free1.data());
    return {best_, best_obj_};
  }

 private:
  double* y0(std::size_t level, std::size_t child) {
    return y0_.data() + (level * inputs_.size() + child) * tab_.count;
  }
  double* y1(std::size_t level, std::size_t child) {
    return y1_.data() + (level * inputs_.size() + child) * tab_.count;
  }
  const double* col0(std::size_t t) const { return tab_.col0.data() + t * tab_.count; }
  const double* col1(std::size_t t) const { return tab_.col1.data() + t * tab_.count; }

  // Range of Σ_{t > level} col_t·u[t] over u[t] ∈ [u_min, u_max], per scenario.
  void build_suffix_bounds() {
    const std::size_t n = tab_.count;
    const std::size_t horizon = tab_.horizon;
    const double umin = inputs_.front();
    const double umax = inputs_.back();
    for (auto* v : {&lo0_, &hi0_, &lo1_, &hi1_}) v->assign(horizon * n, 0.0);
    for (std::size_t level = horizon - 1; level-- > 0;) {
      const std::size_t t = level + 1;
      for (std::size_t i = 0; i < n; ++i) {
        const double a0 = col0(t)[i] * umin, b0 = col0(t)[i] * umax;
        const double a1 = col1(t)[i] * umin, b1 = col1(t)[i] * umax;
        lo0_[level * n + i] = lo0_[t * n + i] + std::min(a0, b0);
        hi0_[level * n + i] = hi0_[t * n + i] + std::max(a0, b0);
        lo1_[level * n + i] = lo1_[t * n + i] + std::min(a1, b1);
        hi1_[level * n + i] = hi1_[t * n + i] + std::max(a1, b1);
      }
    }
  }

  double bound(std::size_t level, const double* s0, const double* s1) const {
    const std::size_t n = tab_.count;
    return k_.interval_lower_bound(s0, s1, lo0_.data() + level * n, hi0_.data() + level * n,
                                   lo1_.data() + level * n, hi1_.data() + level * n, n);
  }

  bool pruned(double lb) const {
    // The bound is computed with a different summation order than the leaf
    // objective; the margin keeps it admissible so ties are still visited.
    return lb > best_obj_ * (1.0 + 1e-9) + 1e-12;
  }

  void consider(double obj) {
    if (obj < best_obj_ ||
        (obj == best_obj_ && std::lexicographical_compare(current_.begin(), current_.end(),
                                                          best_.begin(), best_.end()))) {
      best_obj_ = obj;
      best_ = current_;
    }
  }

  // Greedy dive: at each level take the child with the smallest bound.
  void seed_incumbent() {
    const double* in0 = tab_.free0.data();
    const double* in1 = tab_.free1.data();
    const std::size_t last = tab_.horizon - 1;
    for (std::size_t level = 0; level <= last; ++level) {
      double best_value = std::numeric_limits<double>::infinity();
      std::size_t best_child = 0;
      for (std::size_t c = 0; c < inputs_.size(); ++c) {
        k_.axpy2(y0(level, c), y1(level, c), in0, in1, col0(level), col1(level), inputs_[c],
                 tab_.count);
        const double v = level == last ? k_.max_abs2(y0(level, c), y1(level, c), tab_.count)
                                       : bound(level, y0(level, c), y1(level, c));
        if (v < best_value) {
          best_value = v;
          best_child = c;
        }
      }
      current_[level] = inputs_[best_child];
      in0 = y0(level, best_child);
      in1 = y1(level, best_child);
      if (level == last) consider(best_value);
    }
  }

  void descend(std::size_t level, const double* in0, const double* in1) {
    const std::size_t m = inputs_.size();
    const bool leaf = level + 1 == tab_.horizon;
    if (!prune_) {
      for (std::size_t c = 0; c < m; ++c) {
        current_[level] = inputs_[c];
        k_.axpy2(y0(level, c), y1(level, c), in0, in1, col0(level), col1(level), inputs_[c],
                 tab_.count);
        if (leaf) {
          consider(k_.max_abs2(y0(level, c), y1(level, c), tab_.count));
        } else {
          descend(level + 1, y0(level, c), y1(level, c));
        }
      }
      return;
    }

    // Expand all children, then visit them best bound first (ties by input).
    std::vector<std::pair<double, std::size_t>> order(m);
    for (std::size_t c = 0; c < m; ++c) {
      k_.axpy2(y0(level, c), y1(level, c), in0, in1, col0(level), col1(level), inputs_[c],
               tab_.count);
      const double v = leaf ? k_.max_abs2(y0(level, c), y1(level, c), tab_.count)
                            : bound(level, y0(level, c), y1(level, c));
      order[c] = {v, c};
    }
    if (leaf) {
      for (std::size_t c = 0; c < m; ++c) {
        current_[level] = inputs_[c];
        consider(order[c].first);
      }
      return;
    }
    std::sort(order.begin(), order.end());
    for (const auto& [lb, c] : order) {
      if (pruned(lb)) break;
      current_[level] = inputs_[c];
      descend(level + 1, y0(level, c), y1(level, c));
    }
  }

  const ControlTableau& tab_;
  std::span<const double> inputs_;
  bool prune_;
  const kernels::KernelTable& k_;
  std::vector<double> y0_, y1_;
  std::vector<double> lo0_, hi0_, lo1_, hi1_;
  std::vector<double> current_, best_;
  double best_obj_ = std::numeric_limits<double>::infinity();
};

ControlSolution solve_tableau(const ControlTableau& tab, const ControlInstance& instance,
                              ControlStrategy strategy, const ControlOptions& options) {
  if (strategy == ControlStrategy::exhaustive) {
    const double leaves = std::pow(static_cast<double>(instance.inputs.size()),
                                   static_cast<double>(instance.horizon));
    if (leaves > options.exhaustive_guard) {
      throw CapacityError("exhaustive search over " + std::to_string(instance.inputs.size()) +
                          "^" + std::to_string(instance.horizon) +
                          " input sequences exceeds the guard; use branch_and_bound");
    }
  }
  Search search(tab, instance.inputs, strategy == ControlStrategy::branch_and_bound);
  return search.run();
}

}  // namespace

ControlSolution solve_control(const ControlInstance& instance, ControlStrategy strategy,
                              const ControlOptions& options) {
  instance.validate();
  const auto tab = ControlTableau::build(instance, instance.scenarios);
  return solve_tableau(tab, instance, strategy, options);
}

ControlSolution solve_control(const ControlInstance& instance, std::span<const std::size_t> indices,
                              ControlStrategy strategy, const ControlOptions& options) {
  instance.validate();
  if (indices.empty()) throw DomainError("control subproblem needs at least one scenario");
  std::vector<Mat2> chosen;
  chosen.reserve(indices.size());
  for (std::size_t i : indices) chosen.push_back(instance.scenarios.at(i));
  const auto tab = ControlTableau::build(instance, chosen);
  return solve_tableau(tab, instance, strategy, options);
}

double control_objective(const ControlInstance& instance, std::span<const double> inputs) {
  instance.validate();
  const auto tab = ControlTableau::build(instance, instance.scenarios);
  std::vector<double> y0, y1;
  tab.terminal_states(inputs, y0, y1);
  return kernels::max_abs2(y0, y1);
}

std::pair<ControlSolution, std::vector<std::size_t>> solve_control_generation(
    const ControlInstance& instance, std::span<const std::size_t> indices,
    std::span<const std::size_t> seed, ControlStrategy strategy, const ControlOptions& options) {
  instance.validate();
  if (indices.empty()) throw DomainError("control subproblem needs at least one scenario");
  std::vector<Mat2> members;
  members.reserve(indices.size());
  for (std::size_t i : indices) members.push_back(instance.scenarios.at(i));
  const auto tab = ControlTableau::build(instance, members);

  std::vector<std::size_t> k(seed.begin(), seed.end());
  std::sort(k.begin(), k.end());
  if (k.empty()) k.push_back(indices.front());
  std::vector<double> y0, y1;
  while (true) {
    auto sol = solve_control(instance, k, strategy, options);
    // Per-scenario values are computed lane by lane with the same operations
    // as inside the solver, so they compare exactly with sol.objective.
    tab.terminal_states(sol.inputs, y0, y1);
    std::size_t worst = 0;
    double worst_value = -1.0;
    for (std::size_t m = 0; m < members.size(); ++m) {
      const double g = std::max(std::fabs(y0[m]), std::fabs(y1[m]));
      if (g > worst_value) {
        worst_value = g;
        worst = m;
      }
    }
    if (!(worst_value > sol.objective)) return {std::move(sol), std::move(k)};
    k.insert(std::upper_bound(k.begin(), k.end(), indices[worst]), indices[worst]);
  }
}

ControlAnalysis analyze_control(const ControlInstance& instance, ControlStrategy strategy,
                                const ControlOptions& options) {
  instance.validate();
  const std::size_t n = instance.scenarios.size();
  std::vector<std::size_t> current(n);
  std::iota(current.begin(), current.end(), std::size_t{0});

  auto [full, cert] = solve_control_generation(instance, current, {}, strategy, options);
  if (!(solve_control(instance, cert, strategy, options) == full)) {
    throw ConsistencyError("solver returned different solutions on identical input");
  }

  bool changed = true;
  std::vector<std::size_t> trial, seed;
  while (changed && current.size() > 1) {
    changed = false;
    for (std::size_t pos = 0; pos < current.size() && current.size() > 1;) {
      const std::size_t j = current[pos];
      trial.assign(current.begin(), current.end());
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
      if (!std::binary_search(cert.begin(), cert.end(), j)) {
        current.swap(trial);
        changed = true;
        continue;
      }
      seed.clear();
      for (std::size_t c : cert) {
        if (c != j) seed.push_back(c);
      }
      auto [sol, k] = solve_control_generation(instance, trial, seed, strategy, options);
      if (sol == full) {
        current.swap(trial);
        cert = std::move(k);
        changed = true;
      } else {
        ++pos;
      }
    }
  }
  return {std::move(full), InvariantSet{std::move(current)}, std::move(cert)};
}

InvariantSet invariant_set_control(const ControlInstance& instance, ControlStrategy strategy,
                                   const ControlOptions& options) {
  return analyze_control(instance, strategy, options).invariant;
}

InvariantSet invariant_set_control_naive(const ControlInstance& instance,
                                         ControlStrategy strategy,
                                         const ControlOptions& options) {
  instance.validate();
  return greedy_invariant_set(
      instance.scenarios.size(),
      [&](std::span<const std::size_t> idx) {
        return solve_control(instance, idx, strategy, options);
      },
      [](const ControlSolution& a, const ControlSolution& b) { return a == b; });
}

}  // namespace scenopt
