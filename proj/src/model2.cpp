#include "lotforge/model2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lotforge {

using milp::LinearTerm;
using milp::MilpModel;
using milp::Relation;

namespace {

std::string jht(const char* sym, int j, int h, int t) {
  std::ostringstream s;
  s << sym << "[j=" << j + 1 << ",h=" << h + 1 << ",t=" << t + 1 << ']';
  return s.str();
}

std::string jt(const char* sym, int j, int t) {
  std::ostringstream s;
  s << sym << "[j=" << j + 1 << ",t=" << t + 1 << ']';
  return s.str();
}

std::string mt(const char* sym, int m, int t) {
  std::ostringstream s;
  s << sym << "[m=" << m + 1 << ",t=" << t + 1 << ']';
  return s.str();
}

std::string pair_name(const char* sym, int j, int h, int k, int l, int t) {
  std::ostringstream s;
  s << sym << "[j=" << j + 1 << ",h=" << h + 1 << ",k=" << k + 1 << ",l=" << l + 1
    << ",t=" << t + 1 << ']';
  return s.str();
}

}  // namespace

std::pair<MilpModel, Model2Vars> build_model2(const Instance& inst, const Model2Options& options) {
  inst.require_valid();
  MilpModel model;
  Model2Vars vars;

  const int T = inst.periods;
  const double L = inst.period_length;
  const double g_time = inst.horizon();

  auto job_has_demand = [&inst](int j) { return inst.total_demand(j) > 0.0; };

  vars.x.resize(inst.jobs);
  vars.y.resize(inst.jobs);
  vars.s.resize(inst.jobs);
  vars.f.resize(inst.jobs);
  vars.y_names_by_period.resize(T);
  vars.z_names_by_period.resize(T);

  for (int j = 0; j < inst.jobs; ++j) {
    const int ops = inst.ops(j);
    const double lot_cap = inst.total_demand(j);
    vars.x[j].resize(ops);
    vars.y[j].resize(ops);
    vars.s[j].resize(ops);
    vars.f[j].resize(ops);
    for (int h = 0; h < ops; ++h) {
      for (int t = 0; t < T; ++t) {
        vars.x[j][h].resize(T);
        vars.y[j][h].resize(T);
        vars.s[j][h].resize(T);
        vars.f[j][h].resize(T);
      }
    }
    for (int h = 0; h < ops; ++h) {
      for (int t = 0; t < T; ++t) {
        vars.x[j][h][t] = model.add_continuous(jht("x", j, h, t), 0.0, lot_cap);
        const std::string yname = jht("y", j, h, t);
        vars.y[j][h][t] = model.add_binary(yname);
        model.set_branch_priority(vars.y[j][h][t], 2);
        vars.y_names_by_period[t].push_back(yname);
        vars.s[j][h][t] = model.add_continuous(jht("s", j, h, t), L * t, L * (t + 1));
        vars.f[j][h][t] = model.add_continuous(jht("f", j, h, t), L * t, L * (t + 1));
      }
    }
  }
  vars.o.resize(inst.machines);
  for (int m = 0; m < inst.machines; ++m) {
    vars.o[m].resize(T);
    for (int t = 0; t < T; ++t) {
      vars.o[m][t] = model.add_continuous(mt("o", m, t), 0.0, inst.overtime_limit(m, t));
      model.set_objective(vars.o[m][t], inst.overtime_cost(m));
    }
  }
  vars.F.resize(inst.jobs);
  vars.Tr.resize(inst.jobs);
  for (int j = 0; j < inst.jobs; ++j) {
    vars.F[j].resize(T);
    vars.Tr[j].resize(T);
    for (int t = 0; t < T; ++t) {
      vars.F[j][t] = model.add_continuous(jt("F", j, t), 0.0, g_time);
      vars.Tr[j][t] = model.add_continuous(jt("Tr", j, t), 0.0, g_time);
      model.set_objective(vars.Tr[j][t], inst.tardiness_cost(j));
    }
  }
  // Sequencing variables for ordered pairs of distinct operations that share
  // a machine.
  for (int j = 0; j < inst.jobs; ++j) {
    for (int h = 0; h < inst.ops(j); ++h) {
      for (int k = 0; k < inst.jobs; ++k) {
        for (int l = 0; l < inst.ops(k); ++l) {
          if (j == k && h == l) continue;
          if (inst.machine_of(j, h) != inst.machine_of(k, l)) continue;
          if (options.prune_z && (!job_has_demand(j) || !job_has_demand(k))) continue;
          for (int t = 0; t < T; ++t) {
            const std::string name = pair_name("z", j, h, k, l, t);
            const int id = model.add_binary(name);
            model.set_branch_priority(id, 1);
            vars.z[{j, h, k, l, t}] = id;
            vars.z_names_by_period[t].push_back(name);
          }
        }
      }
    }
  }

  // Cumulative precedence between consecutive operations.
  for (int j = 0; j < inst.jobs; ++j) {
    for (int h = 0; h + 1 < inst.ops(j); ++h) {
      for (int t = 0; t < T; ++t) {
        std::vector<LinearTerm> terms;
        terms.push_back({vars.x[j][h + 1][t], 1.0});
        for (int tp = 0; tp <= t; ++tp) terms.push_back({vars.x[j][h][tp], -1.0});
        for (int tp = 0; tp < t; ++tp) terms.push_back({vars.x[j][h + 1][tp], 1.0});
        model.add_constraint(jht("cum_precedence", j, h, t), std::move(terms),
                             Relation::less_equal, 0.0);
      }
    }
  }
  // Every operation processes the job's whole demand across the horizon.
  for (int j = 0; j < inst.jobs; ++j) {
    const double total = inst.total_demand(j);
    for (int h = 0; h < inst.ops(j); ++h) {
      std::vector<LinearTerm> terms;
      for (int t = 0; t < T; ++t) terms.push_back({vars.x[j][h][t], 1.0});
      std::ostringstream name;
      name << "demand_total[j=" << j + 1 << ",h=" << h + 1 << ']';
      model.add_constraint(name.str(), std::move(terms), Relation::equal, total);
    }
  }
  // Capacity with the learning effect.
  for (int m = 0; m < inst.machines; ++m) {
    for (int t = 0; t < T; ++t) {
      std::vector<LinearTerm> terms;
      for (int j = 0; j < inst.jobs; ++j) {
        for (int h = 0; h < inst.ops(j); ++h) {
          if (inst.machine_of(j, h) != m) continue;
          const double rate =
              inst.proc_rates[j][h] * learning_multiplier(t + 1, inst.learning[j][h]);
          terms.push_back({vars.x[j][h][t], rate});
        }
      }
      terms.push_back({vars.o[m][t], -1.0});
      model.add_constraint(mt("capacity", m, t), std::move(terms), Relation::less_equal,
                           inst.capacity(m, t));
    }
  }
  // Setup linking: no lot without the period's setup.
  for (int j = 0; j < inst.jobs; ++j) {
    const double g_qty = std::max(inst.total_demand(j), 1.0);
    for (int h = 0; h < inst.ops(j); ++h) {
      for (int t = 0; t < T; ++t) {
        model.add_constraint(jht("setup_link", j, h, t),
                             {{vars.x[j][h][t], 1.0}, {vars.y[j][h][t], -g_qty}},
                             Relation::less_equal, 0.0);
      }
    }
  }
  // Disjunctive sequencing on shared machines.
  for (const auto& [key, id] : vars.z) {
    const auto [j, h, k, l, t] = key;
    if (j < k || (j == k && h < l)) {  // one row per unordered pair
      const auto rev = vars.z.find({k, l, j, h, t});
      model.add_constraint(pair_name("either_order", j, h, k, l, t),
                           {{id, 1.0},
                            {rev->second, 1.0},
                            {vars.y[j][h][t], -1.0},
                            {vars.y[k][l][t], -1.0}},
                           Relation::greater_equal, -1.0);
    }
    model.add_constraint(pair_name("order_gap", j, h, k, l, t),
                         {{vars.f[j][h][t], 1.0}, {vars.s[k][l][t], -1.0}, {id, g_time}},
                         Relation::less_equal, g_time);
  }
  // Within-period chain precedence and durations.
  for (int j = 0; j < inst.jobs; ++j) {
    for (int h = 0; h + 1 < inst.ops(j); ++h) {
      for (int t = 0; t < T; ++t) {
        model.add_constraint(jht("chain", j, h, t),
                             {{vars.s[j][h + 1][t], 1.0}, {vars.f[j][h][t], -1.0}},
                             Relation::greater_equal, 0.0);
      }
    }
  }
  for (int j = 0; j < inst.jobs; ++j) {
    for (int h = 0; h < inst.ops(j); ++h) {
      for (int t = 0; t < T; ++t) {
        const double rate =
            inst.proc_rates[j][h] * learning_multiplier(t + 1, inst.learning[j][h]);
        model.add_constraint(jht("duration", j, h, t),
                             {{vars.f[j][h][t], 1.0},
                              {vars.s[j][h][t], -1.0},
                              {vars.x[j][h][t], -rate}},
                             Relation::equal, 0.0);
        model.add_constraint(jht("window_start", j, h, t), {{vars.s[j][h][t], 1.0}},
                             Relation::greater_equal, L * t);
        model.add_constraint(jht("window_finish", j, h, t), {{vars.f[j][h][t], 1.0}},
                             Relation::less_equal, L * (t + 1));
      }
    }
  }
  // Job finish detection and the tardiness link.
  for (int j = 0; j < inst.jobs; ++j) {
    const int last = inst.ops(j) - 1;
    for (int t = 0; t < T; ++t) {
      model.add_constraint(jt("job_finish", j, t),
                           {{vars.F[j][t], 1.0},
                            {vars.f[j][last][t], -1.0},
                            {vars.y[j][last][t], -g_time}},
                           Relation::greater_equal, -g_time);
      model.add_constraint(jt("tardiness_link", j, t),
                           {{vars.Tr[j][t], 1.0}, {vars.F[j][t], -1.0}},
                           Relation::greater_equal, -inst.due(j, t));
    }
  }
  // Overtime caps.
  for (int m = 0; m < inst.machines; ++m) {
    for (int t = 0; t < T; ++t) {
      model.add_constraint(mt("overtime_cap", m, t), {{vars.o[m][t], 1.0}}, Relation::less_equal,
                           inst.overtime_limit(m, t));
    }
  }

  return {std::move(model), std::move(vars)};
}

Solution decode_model2(const Instance& inst, const Model2Vars& vars,
                       const milp::SolveResult& result) {
  if (!result.has_solution()) {
    throw std::invalid_argument("decode_model2: result carries no solution (status " +
                                milp::to_string(result.status) + ")");
  }
  const auto& v = result.values;
  auto at = [&v](int id) {
    if (id < 0 || id >= static_cast<int>(v.size())) {
      throw std::invalid_argument("decode_model2: missing variable value");
    }
    return v[id];
  };

  Solution sol = Solution::zeros(inst);
  for (int j = 0; j < inst.jobs; ++j) {
    for (int h = 0; h < inst.ops(j); ++h) {
      for (int t = 0; t < inst.periods; ++t) {
        const bool on = at(vars.y[j][h][t]) > 0.5;
        sol.performed[j][h][t] = on ? 1 : 0;
        const double lot = std::max(0.0, at(vars.x[j][h][t]));
        sol.x[j][h][t] = on ? lot : 0.0;
        if (on) {
          sol.start[j][h][t] = at(vars.s[j][h][t]);
          sol.finish[j][h][t] = at(vars.f[j][h][t]);
        }
      }
    }
  }
  for (int m = 0; m < inst.machines; ++m) {
    for (int t = 0; t < inst.periods; ++t) {
      sol.overtime(m, t) =
          std::clamp(at(vars.o[m][t]), 0.0, inst.overtime_limit(m, t));
    }
  }
  for (const auto& [key, id] : vars.z) {
    if (at(id) > 0.5 && sol.performed[key.job][key.op][key.period] &&
        sol.performed[key.other_job][key.other_op][key.period]) {
      sol.sequence.push_back({key.job, key.op, key.other_job, key.other_op, key.period});
    }
  }
  sol.job_finish = job_finish_times(inst, sol);
  sol.tardiness = compute_tardiness(inst, sol);
  sol.objective = evaluate_objective(inst, sol);

  const double rel = std::abs(sol.objective - result.objective) /
                     std::max(1.0, std::abs(result.objective));
  if (rel > 1e-5) {
    std::ostringstream msg;
    msg << "decode_model2: recomputed objective " << sol.objective
        << " disagrees with the solver's " << result.objective;
    throw DecodeError(msg.str(), {});
  }
  auto report = validate_solution(inst, sol, ValidationMode::precedence);
  if (!report.feasible()) {
    std::ostringstream msg;
    msg << "decode_model2: decoded solution fails validation (" << report.violations.size()
        << " violations, first: " << report.violations.front().rule
        << report.violations.front().indices << ")";
    throw DecodeError(msg.str(), std::move(report));
  }
  return sol;
}

}  // namespace lotforge
