#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lotforge/core.hpp"
#include "lotforge/milp/model.hpp"
#include "lotforge/milp/solve.hpp"

namespace lotforge {

/// Handles into the big-bucket model. Position-indexed families are laid out
/// [job][op][period][position]; position times [period][machine][position].
struct Model1Vars {
  std::vector<std::vector<std::vector<std::vector<int>>>> X;  ///< position lots
  std::vector<std::vector<std::vector<std::vector<int>>>> y;  ///< position setups
  std::vector<std::vector<std::vector<int>>> I;               ///< inventory [j][h][t]
  std::vector<std::vector<int>> phi;                          ///< final-op shortage [j][t]
  std::vector<std::vector<std::vector<int>>> s, f;            ///< position times [t][m][r]
  /// Stock observable before each successor position: [j][pred op][t][succ pos].
  std::vector<std::vector<std::vector<std::vector<int>>>> avail;
  /// Not-yet-available production throttles: [j][pred op][t][succ pos][pred pos].
  std::vector<std::vector<std::vector<std::vector<std::vector<int>>>>> eta;
  /// Position-order detectors, shared across operation pairs. Key:
  /// (period, successor machine, its position, predecessor machine, its position).
  std::map<std::tuple<int, int, int, int, int>, int> q;
  std::vector<std::vector<int>> o;      ///< overtime [machine][period]
  std::vector<std::vector<int>> F, Tr;  ///< [job][period]
};

/// Builds the big-bucket formulation: per-machine position slots with
/// explicit start/finish times, within-period availability bookkeeping for
/// consecutive operations, inventory/shortage balances across periods.
/// `with_cut` adds the chain-order inequality that forces consecutive
/// operations processed in one period to run strictly in order, which upper
/// bounds the plain model.
std::pair<milp::MilpModel, Model1Vars> build_model1(const Instance& inst, bool with_cut);

/// Aggregates position lots into per-operation lots, maps position timings
/// onto operations, snaps binaries, and recomputes the objective (asserted
/// against the solver's within 1e-5 relative).
Solution decode_model1(const Instance& inst, const Model1Vars& vars,
                       const milp::SolveResult& result);

}  // namespace lotforge
