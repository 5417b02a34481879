#pragma once

#include <string>
#include <vector>

#include "lotforge/core.hpp"

namespace lotforge {

/// Precedence mode demands within-period chain order between consecutive
/// operations; inventory mode only demands that consumption never outruns
/// cumulative availability along the time-ordered event list (ties resolved
/// finish-before-start). Precedence-feasible implies inventory-feasible.
enum class ValidationMode { precedence, inventory };

struct Violation {
  std::string rule;     ///< stable rule id, e.g. "machine_overlap"
  std::string indices;  ///< human-readable index tuple
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;   ///< rhs - lhs; negative when violated
};

struct ViolationReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
};

/// Checks a solution against the problem rules without any MILP machinery:
/// machine non-overlap, chain order or inventory availability (per mode),
/// cross-period lot balance, total demand, capacity and overtime caps,
/// period windows, and durations. Pure function; all comparisons at kFeasTol.
ViolationReport validate_solution(const Instance& inst, const Solution& sol, ValidationMode mode);

}  // namespace lotforge
