#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lotforge/milp/model.hpp"

namespace lotforge::milp {

struct SolveOptions {
  double time_limit = kInfinity;  ///< wall-clock seconds
  double rel_gap = 1e-8;          ///< terminate when |obj - bound| <= rel_gap * max(1, |obj|)
  std::uint64_t seed = 0;         ///< accepted for reproducibility bookkeeping; search is deterministic
  double cutoff = kInfinity;      ///< subtrees with bound >= cutoff are not explored
  std::int64_t node_limit = -1;   ///< < 0 means unlimited
};

enum class SolveStatus { optimal, feasible_at_limit, infeasible, unbounded, unknown, error };

std::string to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::error;
  double objective = 0.0;          ///< incumbent value; meaningful for optimal/feasible_at_limit
  double best_bound = -kInfinity;  ///< proven lower bound (minimization)
  std::vector<double> values;      ///< one entry per model variable when an incumbent exists
  double wall_seconds = 0.0;
  std::int64_t nodes = 0;
  std::string message;

  bool has_solution() const {
    return status == SolveStatus::optimal || status == SolveStatus::feasible_at_limit;
  }
};

/// Exact branch-and-cut style search: LP relaxations via the bundled simplex,
/// activity-based bound propagation at every node, depth-first with
/// most-fractional branching within priority classes. Deterministic for a
/// given model and options, up to wall-clock limits.
SolveResult solve(const MilpModel& model, const SolveOptions& opts = {});

}  // namespace lotforge::milp
