#include "lotforge/validate.hpp"

#include <algorithm>
#include <sstream>

namespace lotforge {

namespace {

struct Collector {
  std::vector<Violation>* out;

  void require(bool ok, const std::string& rule, const std::string& indices, double lhs,
               double rhs) {
    if (ok) return;
    out->push_back(Violation{rule, indices, lhs, rhs, rhs - lhs});
  }
};

std::string idx(std::initializer_list<int> values) {
  std::ostringstream s;
  s << '(';
  bool first = true;
  for (int v : values) {
    if (!first) s << ',';
    s << v + 1;  // report 1-based
    first = false;
  }
  s << ')';
  return s.str();
}

}  // namespace

ViolationReport validate_solution(const Instance& inst, const Solution& sol, ValidationMode mode) {
  inst.require_valid();
  if (!sol.matches_dimensions(inst)) {
    throw std::invalid_argument("validate_solution: solution does not match instance dimensions");
  }
  ViolationReport report;
  Collector c{&report.violations};
  const double tol = kFeasTol;
  const double L = inst.period_length;

  // Lots, setup linking, windows, durations.
  for (int j = 0; j < inst.jobs; ++j) {
    for (int h = 0; h < inst.ops(j); ++h) {
      for (int t = 0; t < inst.periods; ++t) {
        const double lot = sol.x[j][h][t];
        c.require(lot >= -tol, "nonnegative_lot", idx({j, h, t}), lot, 0.0);
        if (!sol.performed[j][h][t]) {
          c.require(lot <= tol, "setup_link", idx({j, h, t}), lot, 0.0);
          continue;
        }
        const double s = sol.start[j][h][t];
        const double f = sol.finish[j][h][t];
        c.require(s >= L * t - tol, "window_start", idx({j, h, t}), L * t, s);
        c.require(f <= L * (t + 1) + tol, "window_finish", idx({j, h, t}), f, L * (t + 1));
        c.require(f >= s - tol, "start_before_finish", idx({j, h, t}), s, f);
        const double dur =
            actual_processing_time(std::max(lot, 0.0), inst.proc_rates[j][h], inst.learning[j][h], t + 1);
        c.require(std::abs(f - s - dur) <= tol, "duration", idx({j, h, t}), f - s, dur);
      }
    }
  }

  // Machine non-overlap among performed operations, per (machine, period).
  for (int m = 0; m < inst.machines; ++m) {
    for (int t = 0; t < inst.periods; ++t) {
      std::vector<std::pair<int, int>> ops;  // (job, op)
      for (int j = 0; j < inst.jobs; ++j) {
        for (int h = 0; h < inst.ops(j); ++h) {
          if (inst.machine_of(j, h) == m && sol.performed[j][h][t]) ops.emplace_back(j, h);
        }
      }
      for (size_t a = 0; a < ops.size(); ++a) {
        for (size_t b = a + 1; b < ops.size(); ++b) {
          const auto [j1, h1] = ops[a];
          const auto [j2, h2] = ops[b];
          const double s1 = sol.start[j1][h1][t], f1 = sol.finish[j1][h1][t];
          const double s2 = sol.start[j2][h2][t], f2 = sol.finish[j2][h2][t];
          const bool overlap = s1 < f2 - tol && s2 < f1 - tol;
          c.require(!overlap, "machine_overlap",
                    idx({m, t}) + idx({j1, h1}) + idx({j2, h2}), std::max(s1, s2),
                    std::min(f1, f2));
        }
      }
    }
  }

  // Consecutive-operation availability: chain order (precedence mode) or
  // event-prefix stock balance (inventory mode), plus cross-period balance.
  for (int j = 0; j < inst.jobs; ++j) {
    for (int h = 0; h + 1 < inst.ops(j); ++h) {
      double cum_pred = 0.0, cum_succ = 0.0;
      for (int t = 0; t < inst.periods; ++t) {
        const double carry_in = cum_pred - cum_succ;
        const bool pred_on = sol.performed[j][h][t];
        const bool succ_on = sol.performed[j][h + 1][t];
        if (mode == ValidationMode::precedence) {
          if (pred_on && succ_on) {
            c.require(sol.start[j][h + 1][t] >= sol.finish[j][h][t] - tol, "chain_order",
                      idx({j, h, t}), sol.finish[j][h][t], sol.start[j][h + 1][t]);
          }
        } else {
          // Time-ordered event list; finishes outrank starts at equal times.
          struct Event {
            double time;
            int kind;  // 0 = predecessor finish (adds stock), 1 = successor start (consumes)
            double qty;
          };
          std::vector<Event> events;
          if (pred_on) events.push_back({sol.finish[j][h][t], 0, sol.x[j][h][t]});
          if (succ_on) events.push_back({sol.start[j][h + 1][t], 1, sol.x[j][h + 1][t]});
          std::sort(events.begin(), events.end(), [tol](const Event& a, const Event& b) {
            if (std::abs(a.time - b.time) <= tol) return a.kind < b.kind;
            return a.time < b.time;
          });
          double avail = carry_in;
          for (const auto& e : events) {
            if (e.kind == 0) {
              avail += e.qty;
            } else {
              c.require(e.qty <= avail + tol, "stock_available", idx({j, h + 1, t}), e.qty, avail);
            }
          }
        }
        cum_pred += pred_on ? sol.x[j][h][t] : 0.0;
        cum_succ += succ_on ? sol.x[j][h + 1][t] : 0.0;
        c.require(cum_succ <= cum_pred + tol, "cumulative_balance", idx({j, h, t}), cum_succ,
                  cum_pred);
      }
    }
  }

  // Total demand per operation.
  for (int j = 0; j < inst.jobs; ++j) {
    const double total = inst.demand.row(j).sum();
    for (int h = 0; h < inst.ops(j); ++h) {
      double produced = 0.0;
      for (int t = 0; t < inst.periods; ++t) produced += sol.x[j][h][t];
      c.require(std::abs(produced - total) <= tol, "total_demand", idx({j, h}), produced, total);
    }
  }

  // Capacity with the learning effect, overtime caps.
  for (int m = 0; m < inst.machines; ++m) {
    for (int t = 0; t < inst.periods; ++t) {
      double load = 0.0;
      for (int j = 0; j < inst.jobs; ++j) {
        for (int h = 0; h < inst.ops(j); ++h) {
          if (inst.machine_of(j, h) != m) continue;
          load += actual_processing_time(std::max(sol.x[j][h][t], 0.0), inst.proc_rates[j][h],
                                         inst.learning[j][h], t + 1);
        }
      }
      const double o = sol.overtime(m, t);
      c.require(o >= -tol, "overtime_nonnegative", idx({m, t}), o, 0.0);
      c.require(o <= inst.overtime_limit(m, t) + tol, "overtime_cap", idx({m, t}), o,
                inst.overtime_limit(m, t));
      c.require(load <= inst.capacity(m, t) + std::max(o, 0.0) + tol, "capacity", idx({m, t}),
                load, inst.capacity(m, t) + std::max(o, 0.0));
    }
  }

  return report;
}

}  // namespace lotforge
