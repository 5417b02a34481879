#include "lotforge/lower_bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lotforge {

using milp::LinearTerm;
using milp::MilpModel;
using milp::Relation;

namespace {

std::string jt(const char* sym, int j, int t) {
  std::ostringstream s;
  s << sym << "[j=" << j + 1 << ",t=" << t + 1 << ']';
  return s.str();
}

std::vector<int> demand_periods(const Instance& inst, int j) {
  std::vector<int> tp;
  for (int t = 0; t < inst.periods; ++t) {
    if (inst.demand(j, t) > 0.0) tp.push_back(t);
  }
  return tp;
}

}  // namespace

std::pair<MilpModel, LbAux> apply_lb1(const MilpModel& model, const Model2Vars& vars,
                                      const Instance& inst, const std::set<int>& periods) {
  if (periods.empty()) throw std::invalid_argument("apply_lb1: empty period set");
  for (int t : periods) {
    if (t < 0 || t >= inst.periods) {
      throw std::invalid_argument("apply_lb1: period outside the horizon");
    }
  }
  MilpModel out = model;
  LbAux aux;
  aux.u.assign(inst.jobs, std::vector<int>(inst.periods, -1));
  aux.fr.assign(inst.jobs, std::vector<int>(inst.periods, -1));
  const double g_time = inst.horizon();
  const double L = inst.period_length;

  for (int j = 0; j < inst.jobs; ++j) {
    const double g_activity = std::max(1.0, inst.ops(j) * inst.total_demand(j));
    for (int t : periods) {
      out.remove_constraint(jt("tardiness_link", j, t));
      const int u = out.add_binary(jt("u", j, t));
      out.set_branch_priority(u, 2);
      aux.u[j][t] = u;

      // Tr >= L(t-1) + sum_h rate*x - d - (1-u)*G
      std::vector<LinearTerm> tard;
      tard.push_back({vars.Tr[j][t], 1.0});
      for (int h = 0; h < inst.ops(j); ++h) {
        const double rate =
            inst.proc_rates[j][h] * learning_multiplier(t + 1, inst.learning[j][h]);
        tard.push_back({vars.x[j][h][t], -rate});
      }
      tard.push_back({u, -g_time});
      out.add_constraint(jt("lb1_tardiness", j, t), std::move(tard), Relation::greater_equal,
                         L * t - inst.due(j, t) - g_time);

      // The indicator trips on the final operation's lot: the own-work floor
      // bounds the job finish time, which only exists in periods where the
      // final operation actually runs.
      out.add_constraint(jt("lb1_activity", j, t),
                         {{vars.x[j][inst.ops(j) - 1][t], 1.0}, {u, -g_activity}},
                         Relation::less_equal, 0.0);
    }
  }
  return {std::move(out), std::move(aux)};
}

std::pair<MilpModel, LbAux> apply_lb2(const MilpModel& model, const Model2Vars& vars,
                                      const Instance& inst, int first_period,
                                      const LbChoice& choice) {
  if (choice.k_const <= 0.0) throw std::invalid_argument("apply_lb2: k_const must be positive");
  if (first_period < 0) throw std::invalid_argument("apply_lb2: negative first period");
  MilpModel out = model;
  LbAux aux;
  aux.u.assign(inst.jobs, std::vector<int>(inst.periods, -1));
  aux.fr.assign(inst.jobs, std::vector<int>(inst.periods, -1));
  const double L = inst.period_length;
  const bool current_rate = choice.kind == LbKind::lb2_variant40;

  for (int j = 0; j < inst.jobs; ++j) {
    const auto tp = demand_periods(inst, j);
    if (tp.empty()) continue;
    const int last_tp = tp.back();
    for (int t = first_period; t < inst.periods; ++t) {
      const bool is_demand_period = inst.demand(j, t) > 0.0;
      if (is_demand_period) {
        // Remaining work at the horizon's fastest rate (or the period's own
        // rate for the experimental variant) against the time left before
        // the due date.
        out.remove_constraint(jt("tardiness_link", j, t));
        double cum_demand = 0.0;
        for (int tt = 0; tt <= t; ++tt) cum_demand += inst.demand(j, tt);
        std::vector<LinearTerm> terms;
        terms.push_back({vars.Tr[j][t], 1.0});
        double rhs = -(inst.due(j, t) - L * t);
        for (int h = 0; h < inst.ops(j); ++h) {
          const double mult = learning_multiplier(current_rate ? t + 1 : inst.periods,
                                                  inst.learning[j][h]);
          const double rate = inst.proc_rates[j][h] * mult;
          rhs += cum_demand * rate;
          for (int tt = 0; tt < t; ++tt) terms.push_back({vars.x[j][h][tt], rate});
        }
        out.add_constraint(jt("lb2_tardiness", j, t), std::move(terms), Relation::greater_equal,
                           rhs);
      } else if (t > last_tp) {
        // Past the last demand period: pressure scales with the remaining lot.
        out.remove_constraint(jt("tardiness_link", j, t));
        double cum_demand = 0.0;
        for (int tt = 0; tt <= last_tp; ++tt) cum_demand += inst.demand(j, tt);

        const int fr = out.add_continuous(jt("fr", j, t), 0.0,
                                          std::max(1.0, inst.ops(j) * inst.total_demand(j)));
        aux.fr[j][t] = fr;

        std::vector<LinearTerm> remaining;
        remaining.push_back({fr, 1.0});
        for (int h = 0; h < inst.ops(j); ++h) {
          for (int tt = 0; tt <= t; ++tt) remaining.push_back({vars.x[j][h][tt], 1.0});
        }
        out.add_constraint(jt("lb2_remaining", j, t), std::move(remaining),
                           Relation::greater_equal, inst.ops(j) * cum_demand);

        std::vector<LinearTerm> roll;
        roll.push_back({vars.Tr[j][t], 1.0});
        double rhs = 0.0;
        for (int h = 0; h < inst.ops(j); ++h) {
          const double rate =
              inst.proc_rates[j][h] * learning_multiplier(inst.periods, inst.learning[j][h]);
          rhs += cum_demand * rate;
          for (int tt = 0; tt <= t; ++tt) roll.push_back({vars.x[j][h][tt], rate});
        }
        roll.push_back({fr, (inst.due(j, t) - L * t) / (choice.k_const * (t + 1))});
        out.add_constraint(jt("lb2_rollover", j, t), std::move(roll), Relation::greater_equal,
                           rhs);
      }
      // Demandless periods before the last demand keep the exact link.
    }
  }
  return {std::move(out), std::move(aux)};
}

milp::SolveResult lb_solve(const Instance& inst, const LbChoice& choice,
                           const milp::SolveOptions& opts) {
  inst.require_valid();
  auto [model, vars] = build_model2(inst);
  MilpModel bounded;
  if (choice.kind == LbKind::lb1) {
    std::set<int> all;
    for (int t = 0; t < inst.periods; ++t) all.insert(t);
    bounded = apply_lb1(model, vars, inst, all).first;
  } else {
    bounded = apply_lb2(model, vars, inst, 0, choice).first;
  }
  return milp::solve(bounded, opts);
}

double lb_objective(const Instance& inst, const LbChoice& choice,
                    const milp::SolveOptions& opts) {
  const auto res = lb_solve(inst, choice, opts);
  if (!res.has_solution()) {
    throw std::runtime_error("lower-bound solve failed: " + milp::to_string(res.status));
  }
  return res.objective;
}

double gap_percent(double optimum, double lower_bound) {
  if (!(lower_bound > 0.0)) {
    throw std::domain_error("gap_percent: lower bound must be positive");
  }
  return 100.0 * (optimum - lower_bound) / lower_bound;
}

}  // namespace lotforge
