#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lotforge {

/// Feasibility tolerance used by the validator and the objective cross-checks,
/// in time units and items.
inline constexpr double kFeasTol = 1e-6;

/// Multiplier applied to a nominal processing rate when work happens in
/// period `t` (1-based) under learning index `a <= 0`. Equals t^a, lies in
/// (0, 1], is 1 at t = 1 or a = 0 and nonincreasing in t.
double learning_multiplier(int period, double learning_index);

/// Time needed to process `quantity` items at rate `rate` (time per item)
/// in period `period` (1-based) under learning index `learning_index`.
double actual_processing_time(double quantity, double rate, double learning_index, int period);

/// Immutable description of one lot-sizing/scheduling problem: J jobs, each a
/// fixed chain of operations routed over M machines, T periods of length L.
///
/// Matrices are dense (jobs x periods or machines x periods); operation-indexed
/// data is ragged because jobs may have routes of different length. Machine
/// indices are 0-based in memory and 1-based in the file format.
struct Instance {
  int jobs = 0;
  int machines = 0;
  int periods = 0;
  double period_length = 0.0;

  std::vector<std::vector<int>> routes;        ///< machine per operation
  std::vector<std::vector<double>> proc_rates; ///< time per item
  std::vector<std::vector<double>> learning;   ///< learning index, <= 0

  Eigen::MatrixXd demand;          ///< jobs x periods, items
  Eigen::MatrixXd due;             ///< jobs x periods, absolute time
  Eigen::VectorXd tardiness_cost;  ///< per job, cost per time unit
  Eigen::VectorXd overtime_cost;   ///< per machine, cost per time unit
  Eigen::MatrixXd capacity;        ///< machines x periods, time units
  Eigen::MatrixXd overtime_limit;  ///< machines x periods, time units

  int positions = 1;  ///< R, number of per-machine positions (big-bucket model only)

  int ops(int j) const { return static_cast<int>(routes[j].size()); }
  int machine_of(int j, int h) const { return routes[j][h]; }
  int total_operations() const;
  double total_demand(int j) const { return demand.row(j).sum(); }
  double total_demand() const { return demand.sum(); }
  double horizon() const { return period_length * periods; }

  /// All invariant violations, empty when the instance is well formed.
  std::vector<std::string> check() const;
  /// Throws std::invalid_argument listing the violations, if any.
  void require_valid() const;
};

/// One z entry: operation (j,h) precedes (k,l) on their shared machine in
/// period t. Only entries with value 1 are stored.
struct SequenceEntry {
  int job = 0, op = 0, other_job = 0, other_op = 0, period = 0;
};

/// A (possibly decoded) schedule. Start/finish times are meaningful only
/// where `performed` is set; unperformed slots must carry zero lots.
struct Solution {
  // indexed [job][op][period]
  std::vector<std::vector<std::vector<double>>> x;
  std::vector<std::vector<std::vector<double>>> start;
  std::vector<std::vector<std::vector<double>>> finish;
  std::vector<std::vector<std::vector<char>>> performed;
  std::vector<SequenceEntry> sequence;

  Eigen::MatrixXd overtime;    ///< machines x periods
  Eigen::MatrixXd job_finish;  ///< jobs x periods, 0 when final op absent
  Eigen::MatrixXd tardiness;   ///< jobs x periods
  double objective = 0.0;

  static Solution zeros(const Instance& inst);
  bool matches_dimensions(const Instance& inst) const;
};

/// Finish time of each job in each period: the latest finish among performed
/// final operations in that period, 0 when the final operation is absent.
Eigen::MatrixXd job_finish_times(const Instance& inst, const Solution& sol);

/// Tr[j][t] = max(0, F[j][t] - due[j][t]) with F recomputed from the schedule.
Eigen::MatrixXd compute_tardiness(const Instance& inst, const Solution& sol);

/// Total cost: sum of tardiness costs (tardiness recomputed, not trusted from
/// `sol`) plus overtime costs. Throws std::invalid_argument on dimension
/// mismatch.
double evaluate_objective(const Instance& inst, const Solution& sol);

// Structured-text round trip. Instance files carry exactly the keys
// {jobs, machines, periods, period_length, routes, proc_rates, learning,
//  demand, due, tc, oc, capacity, overtime_limit, R}; solution files
// {x, s, f, y, z, o, objective}. Indices are 1-based on disk.
Instance read_instance(const std::string& path);
void write_instance(const Instance& inst, const std::string& path);
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

Solution read_solution(const Instance& inst, const std::string& path);
void write_solution(const Solution& sol, const std::string& path);
std::string solution_to_json(const Solution& sol);
Solution solution_from_json(const Instance& inst, const std::string& text);

}  // namespace lotforge
