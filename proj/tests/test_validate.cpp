#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lotforge/validate.hpp"
#include "support/tiny_instances.hpp"

using namespace lotforge;

namespace {

// Two jobs, one op each, sharing one machine; one period of length 30.
Instance shared_machine_instance() {
  Instance inst;
  inst.jobs = 2;
  inst.machines = 1;
  inst.periods = 1;
  inst.period_length = 30.0;
  inst.routes = {{0}, {0}};
  inst.proc_rates = {{1.0}, {1.0}};
  inst.learning = {{0.0}, {0.0}};
  inst.demand = Eigen::MatrixXd::Constant(2, 1, 10.0);
  inst.due = Eigen::MatrixXd::Constant(2, 1, 30.0);
  inst.tardiness_cost = Eigen::VectorXd::Constant(2, 100.0);
  inst.overtime_cost = Eigen::VectorXd::Constant(1, 40.0);
  inst.capacity = Eigen::MatrixXd::Constant(1, 1, 30.0);
  inst.overtime_limit = Eigen::MatrixXd::Constant(1, 1, 0.0);
  return inst;
}

}  // namespace

TEST_CASE("empty solution on a zero-demand instance is feasible") {
  Instance inst = shared_machine_instance();
  inst.demand.setZero();
  const Solution sol = Solution::zeros(inst);
  for (auto mode : {ValidationMode::precedence, ValidationMode::inventory}) {
    const auto report = validate_solution(inst, sol, mode);
    CHECK(report.feasible());
  }
}

TEST_CASE("overlapping operations on one machine are flagged") {
  const Instance inst = shared_machine_instance();
  Solution sol = Solution::zeros(inst);
  for (int j = 0; j < 2; ++j) {
    sol.performed[j][0][0] = 1;
    sol.x[j][0][0] = 10.0;
    sol.start[j][0][0] = 0.0;
    sol.finish[j][0][0] = 10.0;
  }
  const auto report = validate_solution(inst, sol, ValidationMode::precedence);
  CHECK(!report.feasible());
  bool overlap_found = false;
  for (const auto& v : report.violations) overlap_found |= v.rule == "machine_overlap";
  CHECK(overlap_found);
}

TEST_CASE("sequential schedule passes and is reported pure") {
  const Instance inst = shared_machine_instance();
  Solution sol = Solution::zeros(inst);
  sol.performed[0][0][0] = 1;
  sol.x[0][0][0] = 10.0;
  sol.start[0][0][0] = 0.0;
  sol.finish[0][0][0] = 10.0;
  sol.performed[1][0][0] = 1;
  sol.x[1][0][0] = 10.0;
  sol.start[1][0][0] = 10.0;
  sol.finish[1][0][0] = 20.0;
  const auto a = validate_solution(inst, sol, ValidationMode::precedence);
  const auto b = validate_solution(inst, sol, ValidationMode::precedence);
  CHECK(a.feasible());
  CHECK(a.violations.size() == b.violations.size());
}

namespace {

// One job with a two-op chain on two machines, `periods` periods of length 40.
Instance chain_instance(int periods = 2) {
  Instance inst;
  inst.jobs = 1;
  inst.machines = 2;
  inst.periods = periods;
  inst.period_length = 40.0;
  inst.routes = {{0, 1}};
  inst.proc_rates = {{1.0, 1.0}};
  inst.learning = {{0.0, 0.0}};
  inst.demand = Eigen::MatrixXd::Zero(1, periods);
  inst.demand(0, periods - 1) = 10.0;
  inst.due = Eigen::MatrixXd::Constant(1, periods, 40.0 * periods);
  inst.tardiness_cost = Eigen::VectorXd::Constant(1, 100.0);
  inst.overtime_cost = Eigen::VectorXd::Constant(2, 40.0);
  inst.capacity = Eigen::MatrixXd::Constant(2, periods, 40.0);
  inst.overtime_limit = Eigen::MatrixXd::Constant(2, periods, 0.0);
  return inst;
}

}  // namespace

TEST_CASE("inventory mode accepts overlap covered by carried stock") {
  const Instance inst = chain_instance(3);
  Solution sol = Solution::zeros(inst);
  // Op 1 makes 4 units in period 1 and 6 more late in period 2. Op 2 runs 4
  // units in period 2 starting while op 1 is still busy (covered by the 4
  // carried units) and the final 6 units in period 3.
  sol.performed[0][0][0] = 1;
  sol.x[0][0][0] = 4.0;
  sol.start[0][0][0] = 0.0;
  sol.finish[0][0][0] = 4.0;
  sol.performed[0][0][1] = 1;
  sol.x[0][0][1] = 6.0;
  sol.start[0][0][1] = 40.0;
  sol.finish[0][0][1] = 46.0;
  sol.performed[0][1][1] = 1;
  sol.x[0][1][1] = 4.0;
  sol.start[0][1][1] = 41.0;
  sol.finish[0][1][1] = 45.0;
  sol.performed[0][1][2] = 1;
  sol.x[0][1][2] = 6.0;
  sol.start[0][1][2] = 80.0;
  sol.finish[0][1][2] = 86.0;
  CHECK_FALSE(validate_solution(inst, sol, ValidationMode::precedence).feasible());
  CHECK(validate_solution(inst, sol, ValidationMode::inventory).feasible());

  // Raise the consumption beyond the carried stock: both modes reject.
  sol.x[0][1][1] = 5.0;
  sol.finish[0][1][1] = 46.0;
  sol.x[0][1][2] = 5.0;
  sol.finish[0][1][2] = 85.0;
  CHECK_FALSE(validate_solution(inst, sol, ValidationMode::inventory).feasible());
}

TEST_CASE("inventory mode orders events, precedence mode orders operations") {
  const Instance inst = chain_instance();
  Solution sol = Solution::zeros(inst);
  // Period 1: op 1 produces everything first, then op 2 runs after it
  // finishes; feasible both ways.
  sol.performed[0][0][0] = 1;
  sol.x[0][0][0] = 10.0;
  sol.start[0][0][0] = 0.0;
  sol.finish[0][0][0] = 10.0;
  sol.performed[0][1][0] = 1;
  sol.x[0][1][0] = 10.0;
  sol.start[0][1][0] = 10.0;
  sol.finish[0][1][0] = 20.0;
  CHECK(validate_solution(inst, sol, ValidationMode::precedence).feasible());
  CHECK(validate_solution(inst, sol, ValidationMode::inventory).feasible());

  // Shift op 2 to start before op 1 finishes: precedence rejects, inventory
  // rejects too because no stock was carried in.
  sol.start[0][1][0] = 5.0;
  sol.finish[0][1][0] = 15.0;
  CHECK_FALSE(validate_solution(inst, sol, ValidationMode::precedence).feasible());
  CHECK_FALSE(validate_solution(inst, sol, ValidationMode::inventory).feasible());
}

TEST_CASE("precedence acceptance implies inventory acceptance on random micros") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = testsupport::micro_instance(seed);
    // Serial everything-in-period-1 schedule: run all ops back to back in
    // job-then-op order; windows in the fixtures are wide enough.
    Solution sol = Solution::zeros(inst);
    double clock = 0.0;
    for (int j = 0; j < inst.jobs; ++j) {
      const double total = inst.demand.row(j).sum();
      for (int h = 0; h < inst.ops(j); ++h) {
        sol.performed[j][h][0] = 1;
        sol.x[j][h][0] = total;
        sol.start[j][h][0] = clock;
        clock += actual_processing_time(total, inst.proc_rates[j][h], inst.learning[j][h], 1);
        sol.finish[j][h][0] = clock;
      }
    }
    for (int m = 0; m < inst.machines; ++m) {
      double load = 0.0;
      for (int j = 0; j < inst.jobs; ++j) {
        for (int h = 0; h < inst.ops(j); ++h) {
          if (inst.machine_of(j, h) == m) {
            load += actual_processing_time(sol.x[j][h][0], inst.proc_rates[j][h],
                                           inst.learning[j][h], 1);
          }
        }
      }
      sol.overtime(m, 0) = std::max(0.0, load - inst.capacity(m, 0));
    }
    const auto prec = validate_solution(inst, sol, ValidationMode::precedence);
    if (prec.feasible()) {
      CHECK(validate_solution(inst, sol, ValidationMode::inventory).feasible());
    }
  }
}

TEST_CASE("duration and window violations are reported") {
  const Instance inst = shared_machine_instance();
  Solution sol = Solution::zeros(inst);
  sol.performed[0][0][0] = 1;
  sol.x[0][0][0] = 10.0;
  sol.start[0][0][0] = 0.0;
  sol.finish[0][0][0] = 12.0;  // should be 10
  auto report = validate_solution(inst, sol, ValidationMode::precedence);
  bool duration = false;
  for (const auto& v : report.violations) duration |= v.rule == "duration";
  CHECK(duration);

  sol.finish[0][0][0] = 10.0;
  sol.performed[1][0][0] = 1;
  sol.x[1][0][0] = 10.0;
  sol.start[1][0][0] = 25.0;
  sol.finish[1][0][0] = 35.0;  // beyond the period window
  report = validate_solution(inst, sol, ValidationMode::precedence);
  bool window = false;
  for (const auto& v : report.violations) window |= v.rule == "window_finish";
  CHECK(window);
}
