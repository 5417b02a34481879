#include "support/tiny_instances.hpp"

#include <algorithm>
#include <numeric>

#include "lotforge/rng.hpp"

namespace lotforge::testsupport {

Instance one_op_instance() {
  Instance inst;
  inst.jobs = 1;
  inst.machines = 1;
  inst.periods = 1;
  inst.period_length = 20.0;
  inst.routes = {{0}};
  inst.proc_rates = {{1.0}};
  inst.learning = {{0.0}};
  inst.demand = Eigen::MatrixXd::Constant(1, 1, 10.0);
  inst.due = Eigen::MatrixXd::Constant(1, 1, 10.0);
  inst.tardiness_cost = Eigen::VectorXd::Constant(1, 50.0);
  inst.overtime_cost = Eigen::VectorXd::Constant(1, 30.0);
  inst.capacity = Eigen::MatrixXd::Constant(1, 1, 20.0);
  inst.overtime_limit = Eigen::MatrixXd::Constant(1, 1, 0.0);
  inst.positions = 1;
  return inst;
}

namespace {

Instance small_random(Rng& rng, int jobs, int ops_per_job, int machines, int periods,
                      int max_demand) {
  Instance inst;
  inst.jobs = jobs;
  inst.machines = machines;
  inst.periods = periods;

  // Balanced machine assignment keeps every machine's operation count at
  // most ceil(total/M).
  const int total_ops = jobs * ops_per_job;
  std::vector<int> pool;
  for (int i = 0; i < total_ops; ++i) pool.push_back(i % machines);
  for (int i = total_ops - 1; i > 0; --i) {
    std::swap(pool[i], pool[rng.uniform_int(0, i)]);
  }
  int next = 0;
  for (int j = 0; j < jobs; ++j) {
    std::vector<int> route, counts;
    for (int h = 0; h < ops_per_job; ++h) route.push_back(pool[next++]);
    inst.routes.push_back(route);
    std::vector<double> p, a;
    for (int h = 0; h < ops_per_job; ++h) {
      p.push_back(0.5 + 0.5 * rng.uniform_int(0, 3));  // {0.5, 1, 1.5, 2}
      const int mode = rng.uniform_int(0, 2);
      a.push_back(mode == 0 ? 0.0 : (mode == 1 ? -0.3 : -0.5));
    }
    inst.proc_rates.push_back(p);
    inst.learning.push_back(a);
  }

  // Demand in every period, like the reference distributions.
  inst.demand = Eigen::MatrixXd::Zero(jobs, periods);
  for (int j = 0; j < jobs; ++j) {
    for (int t = 0; t < periods; ++t) inst.demand(j, t) = rng.uniform_int(1, max_demand);
  }

  double work = 0.0;
  for (int j = 0; j < jobs; ++j) {
    for (int h = 0; h < ops_per_job; ++h) work += inst.proc_rates[j][h] * inst.demand.row(j).sum();
  }
  const double L = std::max(1.0, 1.1 * work);
  inst.period_length = L;

  inst.due = Eigen::MatrixXd::Zero(jobs, periods);
  for (int j = 0; j < jobs; ++j) {
    for (int t = 0; t < periods; ++t) inst.due(j, t) = rng.uniform(0.2, 0.9) * (t + 1) * L;
  }
  inst.tardiness_cost = Eigen::VectorXd::Zero(jobs);
  for (int j = 0; j < jobs; ++j) inst.tardiness_cost(j) = rng.uniform_int(50, 200);
  inst.overtime_cost = Eigen::VectorXd::Zero(machines);
  for (int m = 0; m < machines; ++m) inst.overtime_cost(m) = rng.uniform_int(30, 60);
  inst.capacity = Eigen::MatrixXd::Zero(machines, periods);
  inst.overtime_limit = Eigen::MatrixXd::Zero(machines, periods);
  for (int m = 0; m < machines; ++m) {
    for (int t = 0; t < periods; ++t) {
      const double c = rng.uniform(0.3, 0.7) * L;
      inst.capacity(m, t) = c;
      inst.overtime_limit(m, t) = L - c;
    }
  }
  int max_on_machine = 0;
  std::vector<int> per_machine(machines, 0);
  for (int j = 0; j < jobs; ++j) {
    for (int h = 0; h < ops_per_job; ++h) ++per_machine[inst.routes[j][h]];
  }
  max_on_machine = *std::max_element(per_machine.begin(), per_machine.end());
  inst.positions = std::max(1, max_on_machine);
  return inst;
}

}  // namespace

Instance tiny_instance(std::uint64_t seed) {
  Rng rng(0x7a11eed5ULL ^ (seed * 0x9e3779b97f4a7c15ULL));
  const int jobs = rng.uniform_int(2, 3);
  const int ops = rng.uniform_int(1, 2);
  const int machines = rng.uniform_int(1, 2);
  const int periods = rng.uniform_int(1, 2);
  return small_random(rng, jobs, ops, machines, periods, 3);
}

Instance micro_instance(std::uint64_t seed) {
  Rng rng(0x31c0ffeeULL ^ (seed * 0x9e3779b97f4a7c15ULL));
  Instance inst;
  inst.jobs = 2;
  inst.machines = 2;
  inst.periods = 2;
  inst.routes = {{rng.uniform_int(0, 1), rng.uniform_int(0, 1)},
                 {rng.uniform_int(0, 1), rng.uniform_int(0, 1)}};
  // Integer rates; learning only on window-slack drawings (see below).
  inst.proc_rates.clear();
  inst.learning.clear();
  const bool with_learning = rng.uniform_int(0, 1) == 1;
  for (int j = 0; j < 2; ++j) {
    std::vector<double> p, a;
    for (int h = 0; h < 2; ++h) {
      p.push_back(rng.uniform_int(1, 2));
      a.push_back(with_learning ? -0.5 : 0.0);
    }
    inst.proc_rates.push_back(p);
    inst.learning.push_back(a);
  }
  inst.demand = Eigen::MatrixXd::Zero(2, 2);
  for (int j = 0; j < 2; ++j) {
    const int total = rng.uniform_int(1, 2);
    inst.demand(j, rng.uniform_int(0, 1)) = total;
  }
  double work = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int h = 0; h < 2; ++h) work += inst.proc_rates[j][h] * inst.demand.row(j).sum();
  }
  const double L = std::ceil(1.25 * work) + 2.0;
  inst.period_length = L;
  inst.due = Eigen::MatrixXd::Zero(2, 2);
  for (int j = 0; j < 2; ++j) {
    for (int t = 0; t < 2; ++t) {
      // Due at or before the period start: tardiness stays linear in the
      // finish time, which keeps optima on integral lots.
      inst.due(j, t) = std::floor(rng.uniform(0.0, 0.6) * t * L);
    }
  }
  inst.tardiness_cost = Eigen::VectorXd::Zero(2);
  inst.overtime_cost = Eigen::VectorXd::Zero(2);
  for (int j = 0; j < 2; ++j) inst.tardiness_cost(j) = rng.uniform_int(5, 20) * 10;
  for (int m = 0; m < 2; ++m) inst.overtime_cost(m) = rng.uniform_int(3, 6) * 10;
  inst.capacity = Eigen::MatrixXd::Zero(2, 2);
  inst.overtime_limit = Eigen::MatrixXd::Zero(2, 2);
  for (int m = 0; m < 2; ++m) {
    for (int t = 0; t < 2; ++t) {
      const double c = with_learning ? L : std::max(1.0, std::floor(0.4 * L));
      inst.capacity(m, t) = c;
      inst.overtime_limit(m, t) = L - c;
    }
  }
  inst.positions = 2;
  return inst;
}

}  // namespace lotforge::testsupport
