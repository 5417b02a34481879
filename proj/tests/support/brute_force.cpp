#include "support/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lotforge::testsupport {

namespace {

struct OpRef {
  int job, op;
};

struct Enumerator {
  const Instance& inst;
  std::vector<OpRef> ops;
  std::vector<int> totals;               // per op, integral demand of its job
  std::vector<std::vector<int>> splits;  // current lots per op per period
  double best = std::numeric_limits<double>::infinity();
  bool found = false;

  explicit Enumerator(const Instance& in) : inst(in) {
    for (int j = 0; j < inst.jobs; ++j) {
      const double total = inst.demand.row(j).sum();
      const int as_int = static_cast<int>(std::llround(total));
      if (std::abs(total - as_int) > 1e-9) {
        throw std::invalid_argument("brute force oracle needs integral demands");
      }
      for (int h = 0; h < inst.ops(j); ++h) {
        ops.push_back({j, h});
        totals.push_back(as_int);
      }
    }
    splits.assign(ops.size(), std::vector<int>(inst.periods, 0));
  }

  void run() { assign_op(0); }

  // Chooses a composition of totals[k] over the periods for operation k.
  void assign_op(size_t k) {
    if (k == ops.size()) {
      if (cumulative_ok()) evaluate_assignment();
      return;
    }
    compose(k, 0, totals[k]);
  }

  void compose(size_t k, int t, int remaining) {
    if (t == inst.periods - 1) {
      splits[k][t] = remaining;
      assign_op(k + 1);
      splits[k][t] = 0;
      return;
    }
    for (int q = 0; q <= remaining; ++q) {
      splits[k][t] = q;
      compose(k, t + 1, remaining - q);
    }
    splits[k][t] = 0;
  }

  int op_index(int j, int h) const {
    int idx = 0;
    for (int jj = 0; jj < j; ++jj) idx += inst.ops(jj);
    return idx + h;
  }

  bool cumulative_ok() const {
    for (int j = 0; j < inst.jobs; ++j) {
      for (int h = 0; h + 1 < inst.ops(j); ++h) {
        int cum_pred = 0, cum_succ = 0;
        for (int t = 0; t < inst.periods; ++t) {
          cum_pred += splits[op_index(j, h)][t];
          cum_succ += splits[op_index(j, h + 1)][t];
          if (cum_succ > cum_pred) return false;
        }
      }
    }
    return true;
  }

  // With lots fixed, check overtime limits, then enumerate machine sequences
  // period by period; periods are independent once lots are fixed.
  void evaluate_assignment() {
    double overtime_cost = 0.0;
    for (int m = 0; m < inst.machines; ++m) {
      for (int t = 0; t < inst.periods; ++t) {
        double load = 0.0;
        for (size_t k = 0; k < ops.size(); ++k) {
          if (inst.machine_of(ops[k].job, ops[k].op) != m) continue;
          load += actual_processing_time(splits[k][t], inst.proc_rates[ops[k].job][ops[k].op],
                                         inst.learning[ops[k].job][ops[k].op], t + 1);
        }
        const double over = std::max(0.0, load - inst.capacity(m, t));
        if (over > inst.overtime_limit(m, t) + 1e-9) return;  // infeasible lots
        overtime_cost += over * inst.overtime_cost(m);
      }
    }

    double tardiness_cost = 0.0;
    for (int t = 0; t < inst.periods; ++t) {
      double period_best;
      if (!best_period_schedule(t, period_best)) return;
      tardiness_cost += period_best;
    }
    const double obj = overtime_cost + tardiness_cost;
    found = true;
    best = std::min(best, obj);
  }

  // Minimal tardiness cost of period t over all machine sequences, or false
  // when no sequence fits the window.
  bool best_period_schedule(int t, double& out) {
    std::vector<size_t> active;
    for (size_t k = 0; k < ops.size(); ++k) {
      if (splits[k][t] > 0) active.push_back(k);
    }
    if (active.empty()) {
      out = 0.0;
      return true;
    }
    std::vector<std::vector<size_t>> per_machine(inst.machines);
    for (size_t k : active) per_machine[inst.machine_of(ops[k].job, ops[k].op)].push_back(k);

    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<std::vector<size_t>> orders = per_machine;
    enumerate_orders(orders, 0, t, best_cost);
    if (!std::isfinite(best_cost)) return false;
    out = best_cost;
    return true;
  }

  void enumerate_orders(std::vector<std::vector<size_t>>& orders, int m, int t,
                        double& best_cost) {
    if (m == inst.machines) {
      double cost;
      if (schedule_cost(orders, t, cost)) best_cost = std::min(best_cost, cost);
      return;
    }
    std::sort(orders[m].begin(), orders[m].end());
    do {
      enumerate_orders(orders, m + 1, t, best_cost);
    } while (std::next_permutation(orders[m].begin(), orders[m].end()));
  }

  // Earliest-start schedule of period t under the given machine orders and
  // the in-period chain precedence. Returns false on cycles or window
  // overflow; otherwise the tardiness cost of the period.
  bool schedule_cost(const std::vector<std::vector<size_t>>& orders, int t, double& cost) {
    const double window_start = inst.period_length * t;
    const double window_end = inst.period_length * (t + 1);

    std::vector<size_t> active;
    for (const auto& seq : orders) active.insert(active.end(), seq.begin(), seq.end());
    std::vector<double> finish(ops.size(), -1.0);

    // Iteratively relax start times; the dependency graph is tiny. A full
    // sweep count above |active| means a cycle between machine order and
    // chain order.
    bool progress = true;
    size_t sweeps = 0;
    std::vector<char> done(ops.size(), 0);
    while (progress) {
      progress = false;
      if (++sweeps > active.size() + 1) break;
      for (const auto& seq : orders) {
        for (size_t pos = 0; pos < seq.size(); ++pos) {
          const size_t k = seq[pos];
          if (done[k]) continue;
          double ready = window_start;
          if (pos > 0) {
            const size_t prev = seq[pos - 1];
            if (!done[prev]) continue;
            ready = std::max(ready, finish[prev]);
          }
          const auto [j, h] = ops[k];
          if (h > 0 && splits[op_index(j, h - 1)][t] > 0) {
            const size_t pred = static_cast<size_t>(op_index(j, h - 1));
            if (!done[pred]) continue;
            ready = std::max(ready, finish[pred]);
          }
          const double dur = actual_processing_time(splits[k][t], inst.proc_rates[j][h],
                                                    inst.learning[j][h], t + 1);
          finish[k] = ready + dur;
          done[k] = 1;
          progress = true;
        }
      }
    }
    for (size_t k : active) {
      if (!done[k]) return false;  // cyclic orders
      if (finish[k] > window_end + 1e-9) return false;
    }
    cost = 0.0;
    for (int j = 0; j < inst.jobs; ++j) {
      const int last = inst.ops(j) - 1;
      const size_t k = static_cast<size_t>(op_index(j, last));
      if (splits[k][t] > 0) {
        cost += inst.tardiness_cost(j) * std::max(0.0, finish[k] - inst.due(j, t));
      }
    }
    return true;
  }
};

}  // namespace

OracleOutcome brute_force_optimum(const Instance& inst) {
  Enumerator e(inst);
  e.run();
  OracleOutcome out;
  out.feasible = e.found;
  out.objective = e.found ? e.best : 0.0;
  return out;
}

}  // namespace lotforge::testsupport
