#include "lotforge/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lotforge {

double learning_multiplier(int period, double learning_index) {
  if (period < 1) {
    throw std::domain_error("learning_multiplier: period must be >= 1");
  }
  if (!(learning_index <= 0.0) || !std::isfinite(learning_index)) {
    throw std::domain_error("learning_multiplier: learning index must be finite and <= 0");
  }
  if (period == 1 || learning_index == 0.0) return 1.0;
  return std::pow(static_cast<double>(period), learning_index);
}

double actual_processing_time(double quantity, double rate, double learning_index, int period) {
  if (quantity < 0.0) throw std::domain_error("actual_processing_time: negative quantity");
  if (rate <= 0.0) throw std::domain_error("actual_processing_time: rate must be positive");
  return quantity * rate * learning_multiplier(period, learning_index);
}

int Instance::total_operations() const {
  int n = 0;
  for (const auto& r : routes) n += static_cast<int>(r.size());
  return n;
}

namespace {

bool dims_ok(const Eigen::MatrixXd& m, int rows, int cols) {
  return m.rows() == rows && m.cols() == cols;
}

}  // namespace

std::vector<std::string> Instance::check() const {
  std::vector<std::string> out;
  auto fail = [&out](const std::string& msg) { out.push_back(msg); };

  if (jobs <= 0) fail("jobs must be positive");
  if (machines <= 0) fail("machines must be positive");
  if (periods <= 0) fail("periods must be positive");
  if (!(period_length > 0.0)) fail("period_length must be positive");
  if (positions <= 0) fail("R (positions) must be positive");
  if (!out.empty()) return out;

  if (static_cast<int>(routes.size()) != jobs) fail("routes must have one row per job");
  if (static_cast<int>(proc_rates.size()) != jobs) fail("proc_rates must have one row per job");
  if (static_cast<int>(learning.size()) != jobs) fail("learning must have one row per job");
  if (!dims_ok(demand, jobs, periods)) fail("demand must be jobs x periods");
  if (!dims_ok(due, jobs, periods)) fail("due must be jobs x periods");
  if (tardiness_cost.size() != jobs) fail("tc must have one entry per job");
  if (overtime_cost.size() != machines) fail("oc must have one entry per machine");
  if (!dims_ok(capacity, machines, periods)) fail("capacity must be machines x periods");
  if (!dims_ok(overtime_limit, machines, periods)) fail("overtime_limit must be machines x periods");
  if (!out.empty()) return out;

  for (int j = 0; j < jobs; ++j) {
    if (routes[j].empty()) fail("job " + std::to_string(j + 1) + " needs at least one operation");
    if (proc_rates[j].size() != routes[j].size() || learning[j].size() != routes[j].size()) {
      fail("per-operation arrays of job " + std::to_string(j + 1) + " disagree with its route");
      continue;
    }
    for (size_t h = 0; h < routes[j].size(); ++h) {
      if (routes[j][h] < 0 || routes[j][h] >= machines) {
        fail("machine index of operation (" + std::to_string(j + 1) + "," + std::to_string(h + 1) +
             ") out of range");
      }
      if (!(proc_rates[j][h] > 0.0)) {
        fail("processing rate of (" + std::to_string(j + 1) + "," + std::to_string(h + 1) +
             ") must be positive");
      }
      if (learning[j][h] > 0.0) {
        fail("learning index of (" + std::to_string(j + 1) + "," + std::to_string(h + 1) +
             ") must be <= 0");
      }
    }
    if (tardiness_cost(j) < 0.0) fail("tardiness cost of job " + std::to_string(j + 1) + " negative");
  }
  const double h_end = horizon();
  if ((demand.array() < 0.0).any()) fail("demand must be nonnegative");
  if ((due.array() < 0.0).any() || (due.array() > h_end + kFeasTol).any()) {
    fail("due dates must lie in [0, T*L]");
  }
  if ((capacity.array() < 0.0).any()) fail("capacity must be nonnegative");
  if ((overtime_limit.array() < 0.0).any()) fail("overtime_limit must be nonnegative");
  if ((overtime_cost.array() < 0.0).any()) fail("overtime costs must be nonnegative");
  return out;
}

void Instance::require_valid() const {
  const auto problems = check();
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid instance:";
  for (const auto& p : problems) msg << "\n  - " << p;
  throw std::invalid_argument(msg.str());
}

Solution Solution::zeros(const Instance& inst) {
  Solution sol;
  sol.x.resize(inst.jobs);
  sol.start.resize(inst.jobs);
  sol.finish.resize(inst.jobs);
  sol.performed.resize(inst.jobs);
  for (int j = 0; j < inst.jobs; ++j) {
    const int h = inst.ops(j);
    sol.x[j].assign(h, std::vector<double>(inst.periods, 0.0));
    sol.start[j].assign(h, std::vector<double>(inst.periods, 0.0));
    sol.finish[j].assign(h, std::vector<double>(inst.periods, 0.0));
    sol.performed[j].assign(h, std::vector<char>(inst.periods, 0));
  }
  sol.overtime = Eigen::MatrixXd::Zero(inst.machines, inst.periods);
  sol.job_finish = Eigen::MatrixXd::Zero(inst.jobs, inst.periods);
  sol.tardiness = Eigen::MatrixXd::Zero(inst.jobs, inst.periods);
  sol.objective = 0.0;
  return sol;
}

bool Solution::matches_dimensions(const Instance& inst) const {
  if (static_cast<int>(x.size()) != inst.jobs || static_cast<int>(start.size()) != inst.jobs ||
      static_cast<int>(finish.size()) != inst.jobs ||
      static_cast<int>(performed.size()) != inst.jobs) {
    return false;
  }
  for (int j = 0; j < inst.jobs; ++j) {
    const size_t h = static_cast<size_t>(inst.ops(j));
    if (x[j].size() != h || start[j].size() != h || finish[j].size() != h ||
        performed[j].size() != h) {
      return false;
    }
    for (size_t k = 0; k < h; ++k) {
      const size_t t = static_cast<size_t>(inst.periods);
      if (x[j][k].size() != t || start[j][k].size() != t || finish[j][k].size() != t ||
          performed[j][k].size() != t) {
        return false;
      }
    }
  }
  return overtime.rows() == inst.machines && overtime.cols() == inst.periods;
}

Eigen::MatrixXd job_finish_times(const Instance& inst, const Solution& sol) {
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(inst.jobs, inst.periods);
  for (int j = 0; j < inst.jobs; ++j) {
    const int last = inst.ops(j) - 1;
    for (int t = 0; t < inst.periods; ++t) {
      if (sol.performed[j][last][t]) F(j, t) = sol.finish[j][last][t];
    }
  }
  return F;
}

Eigen::MatrixXd compute_tardiness(const Instance& inst, const Solution& sol) {
  if (!sol.matches_dimensions(inst)) {
    throw std::invalid_argument("compute_tardiness: solution does not match instance dimensions");
  }
  return (job_finish_times(inst, sol) - inst.due).cwiseMax(0.0);
}

double evaluate_objective(const Instance& inst, const Solution& sol) {
  if (!sol.matches_dimensions(inst)) {
    throw std::invalid_argument("evaluate_objective: solution does not match instance dimensions");
  }
  const Eigen::MatrixXd tr = compute_tardiness(inst, sol);
  double cost = (tr.array().colwise() * inst.tardiness_cost.array()).sum();
  cost += (sol.overtime.array().colwise() * inst.overtime_cost.array()).sum();
  return cost;
}

}  // namespace lotforge
