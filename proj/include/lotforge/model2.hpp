#pragma once

#include <map>
#include <stdexcept>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "lotforge/core.hpp"
#include "lotforge/milp/model.hpp"
#include "lotforge/milp/solve.hpp"
#include "lotforge/validate.hpp"

namespace lotforge {

/// Name-indexed handles into the compact model. Sequencing variables exist
/// only for ordered pairs of distinct operations sharing a machine.
struct Model2Vars {
  // indexed [job][op][period]
  std::vector<std::vector<std::vector<int>>> x, y, s, f;
  std::vector<std::vector<int>> o;       // [machine][period]
  std::vector<std::vector<int>> F, Tr;   // [job][period]

  struct ZKey {
    int job, op, other_job, other_op, period;
    bool operator<(const ZKey& rhs) const {
      return std::tie(job, op, other_job, other_op, period) <
             std::tie(rhs.job, rhs.op, rhs.other_job, rhs.other_op, rhs.period);
    }
  };
  std::map<ZKey, int> z;

  // Names grouped per period, for freezing/relaxing in the rolling horizon.
  std::vector<std::vector<std::string>> y_names_by_period;
  std::vector<std::vector<std::string>> z_names_by_period;
};

struct Model2Options {
  /// Drops z variables for pairs that can provably never co-execute
  /// (currently: either job carries no demand at all). Off by default.
  bool prune_z = false;
};

/// Compact formulation: one lot, setup flag, and time window per
/// (operation, period); disjunctive sequencing on shared machines; within-
/// period chain precedence between consecutive operations; cumulative lot
/// balance across periods. Period windows use the consistent orientation
/// L(t-1) <= s <= f <= L*t.
std::pair<milp::MilpModel, Model2Vars> build_model2(const Instance& inst,
                                                    const Model2Options& options = {});

struct DecodeError : std::runtime_error {
  explicit DecodeError(const std::string& what, ViolationReport rep)
      : std::runtime_error(what), report(std::move(rep)) {}
  ViolationReport report;
};

/// Turns solver values into a Solution: binaries snapped, timings copied for
/// performed operations, tardiness recomputed. The recomputed objective must
/// agree with the solver's within 1e-5 relative and the result must pass
/// precedence-mode validation, otherwise DecodeError is thrown.
Solution decode_model2(const Instance& inst, const Model2Vars& vars,
                       const milp::SolveResult& result);

}  // namespace lotforge
