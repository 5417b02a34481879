#pragma once

#include <set>
#include <utility>
#include <vector>

#include "lotforge/core.hpp"
#include "lotforge/milp/model.hpp"
#include "lotforge/milp/solve.hpp"
#include "lotforge/model2.hpp"

namespace lotforge {

enum class LbKind {
  lb1,            ///< own-work tardiness floor with an activity indicator
  lb2,            ///< remaining-work/remaining-time balance at demand periods
  lb2_variant40,  ///< lb2 with the current-period learning rate; experimental,
                  ///< not certified as a bound
};

struct LbChoice {
  LbKind kind = LbKind::lb1;
  /// Rollover divisor of the past-demand relation; positive, set experimentally.
  double k_const = 2.0;
};

/// Handles for the auxiliary variables a bound introduces. Entries are -1
/// where the variable does not exist for that (job, period).
struct LbAux {
  std::vector<std::vector<int>> u;   ///< activity indicators [job][period]
  std::vector<std::vector<int>> fr;  ///< remaining lots [job][period]
};

/// Replaces the exact tardiness link with the activity-gated own-work floor
/// for every (job, t) with t in `periods` (0-based). Throws when `periods`
/// leaves [0, T).
std::pair<milp::MilpModel, LbAux> apply_lb1(const milp::MilpModel& model, const Model2Vars& vars,
                                            const Instance& inst, const std::set<int>& periods);

/// Replaces the exact tardiness link for periods >= first_period (0-based):
/// demand periods get the remaining-work/remaining-time relation; periods
/// past a job's last demand get the rollover form scaled by the remaining
/// lot. Throws when choice.k_const <= 0.
std::pair<milp::MilpModel, LbAux> apply_lb2(const milp::MilpModel& model, const Model2Vars& vars,
                                            const Instance& inst, int first_period,
                                            const LbChoice& choice);

/// Builds the compact model, applies the chosen bound over the whole horizon,
/// and solves it.
milp::SolveResult lb_solve(const Instance& inst, const LbChoice& choice,
                           const milp::SolveOptions& opts = {});

/// Objective of lb_solve; throws when the solve does not deliver a value.
double lb_objective(const Instance& inst, const LbChoice& choice,
                    const milp::SolveOptions& opts = {});

/// 100 * (optimum - lower_bound) / lower_bound. Requires lower_bound > 0.
double gap_percent(double optimum, double lower_bound);

}  // namespace lotforge
