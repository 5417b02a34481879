#include "lotforge/model1.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lotforge {

using milp::LinearTerm;
using milp::MilpModel;
using milp::Relation;

namespace {

std::string name5(const char* sym, int j, int h, int t, int m, int r) {
  std::ostringstream s;
  s << sym << "[j=" << j + 1 << ",h=" << h + 1 << ",t=" << t + 1 << ",m=" << m + 1
    << ",r=" << r + 1 << ']';
  return s.str();
}

std::string tmr(const char* sym, int t, int m, int r) {
  std::ostringstream s;
  s << sym << "[t=" << t + 1 << ",m=" << m + 1 << ",r=" << r + 1 << ']';
  return s.str();
}

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

std::string qname(int t, int ms, int r, int mp, int rp) {
  std::ostringstream s;
  s << "q[t=" << t + 1 << ",ms=" << ms + 1 << ",r=" << r + 1 << ",mp=" << mp + 1
    << ",rp=" << rp + 1 << ']';
  return s.str();
}

std::string pos_pair(const char* sym, int j, int h, int t, int r, int rp) {
  std::ostringstream s;
  s << sym << "[j=" << j + 1 << ",h=" << h + 1 << ",t=" << t + 1 << ",r=" << r + 1
    << ",rp=" << rp + 1 << ']';
  return s.str();
}

std::string jhtr(const char* sym, int j, int h, int t, int r) {
  std::ostringstream s;
  s << sym << "[j=" << j + 1 << ",h=" << h + 1 << ",t=" << t + 1 << ",r=" << r + 1 << ']';
  return s.str();
}

}  // namespace

std::pair<MilpModel, Model1Vars> build_model1(const Instance& inst, bool with_cut) {
  inst.require_valid();
  const int T = inst.periods;
  const int R = inst.positions;
  const double L = inst.period_length;
  const double g_time = inst.horizon();

  // Every demanded operation needs at least one position slot somewhere.
  for (int m = 0; m < inst.machines; ++m) {
    int demanded = 0;
    for (int j = 0; j < inst.jobs; ++j) {
      if (inst.total_demand(j) <= 0.0) continue;
      for (int h = 0; h < inst.ops(j); ++h) {
        if (inst.machine_of(j, h) == m) ++demanded;
      }
    }
    if (demanded > R * T) {
      std::ostringstream msg;
      msg << "R=" << R << " positions cannot hold the " << demanded
          << " demanded operations of machine " << m + 1 << " across " << T
          << " periods; raise R to at least " << (demanded + T - 1) / T;
      throw std::invalid_argument(msg.str());
    }
  }

  MilpModel model;
  Model1Vars vars;

  auto rate_of = [&inst](int j, int h, int t) {
    return inst.proc_rates[j][h] * learning_multiplier(t + 1, inst.learning[j][h]);
  };

  // Variables.
  vars.X.resize(inst.jobs);
  vars.y.resize(inst.jobs);
  vars.I.resize(inst.jobs);
  vars.phi.resize(inst.jobs);
  vars.F.resize(inst.jobs);
  vars.Tr.resize(inst.jobs);
  for (int j = 0; j < inst.jobs; ++j) {
    const int ops = inst.ops(j);
    const double total = inst.total_demand(j);
    vars.X[j].resize(ops);
    vars.y[j].resize(ops);
    vars.I[j].resize(ops);
    for (int h = 0; h < ops; ++h) {
      const int m = inst.machine_of(j, h);
      vars.X[j][h].assign(T, std::vector<int>(R, -1));
      vars.y[j][h].assign(T, std::vector<int>(R, -1));
      vars.I[j][h].assign(T, -1);
      for (int t = 0; t < T; ++t) {
        for (int r = 0; r < R; ++r) {
          vars.X[j][h][t][r] = model.add_continuous(name5("X", j, h, t, m, r), 0.0, total);
          vars.y[j][h][t][r] = model.add_binary(name5("y", j, h, t, m, r));
          model.set_branch_priority(vars.y[j][h][t][r], 2);
        }
        vars.I[j][h][t] = model.add_continuous(jht("I", j, h, t), 0.0, total);
      }
    }
    vars.phi[j].resize(T);
    vars.F[j].resize(T);
    vars.Tr[j].resize(T);
    for (int t = 0; t < T; ++t) {
      vars.phi[j][t] = model.add_continuous(jt("phi", j, t), 0.0, total);
      vars.F[j][t] = model.add_continuous(jt("F", j, t), 0.0, g_time);
      vars.Tr[j][t] = model.add_continuous(jt("Tr", j, t), 0.0, g_time);
      model.set_objective(vars.Tr[j][t], inst.tardiness_cost(j));
    }
  }
  vars.o.assign(inst.machines, std::vector<int>(T, -1));
  auto& o = vars.o;
  for (int m = 0; m < inst.machines; ++m) {
    for (int t = 0; t < T; ++t) {
      o[m][t] = model.add_continuous(mt("o", m, t), 0.0, inst.overtime_limit(m, t));
      model.set_objective(o[m][t], inst.overtime_cost(m));
    }
  }
  vars.s.assign(T, std::vector<std::vector<int>>(inst.machines, std::vector<int>(R, -1)));
  vars.f = vars.s;
  for (int t = 0; t < T; ++t) {
    for (int m = 0; m < inst.machines; ++m) {
      for (int r = 0; r < R; ++r) {
        vars.s[t][m][r] = model.add_continuous(tmr("s", t, m, r), L * t, L * (t + 1));
        vars.f[t][m][r] = model.add_continuous(tmr("f", t, m, r), L * t, L * (t + 1));
      }
    }
  }
  // Availability bookkeeping for consecutive operation pairs, plus the shared
  // position-order detectors.
  vars.avail.resize(inst.jobs);
  vars.eta.resize(inst.jobs);
  for (int j = 0; j < inst.jobs; ++j) {
    const int pairs = inst.ops(j) - 1;
    const double total = inst.total_demand(j);
    vars.avail[j].resize(std::max(pairs, 0));
    vars.eta[j].resize(std::max(pairs, 0));
    for (int h = 0; h < pairs; ++h) {
      const int ms = inst.machine_of(j, h + 1);
      const int mp = inst.machine_of(j, h);
      vars.avail[j][h].assign(T, std::vector<int>(R, -1));
      vars.eta[j][h].assign(T, std::vector<std::vector<int>>(R, std::vector<int>(R, -1)));
      for (int t = 0; t < T; ++t) {
        for (int r = 0; r < R; ++r) {
          vars.avail[j][h][t][r] = model.add_continuous(jhtr("i", j, h, t, r), 0.0, total);
          for (int rp = 0; rp < R; ++rp) {
            if (ms == mp && r == rp) continue;
            vars.eta[j][h][t][r][rp] =
                model.add_continuous(pos_pair("eta", j, h, t, r, rp), 0.0, total);
            const auto key = std::make_tuple(t, ms, r, mp, rp);
            if (!vars.q.count(key)) {
              const int qid = model.add_binary(qname(t, ms, r, mp, rp));
              model.set_branch_priority(qid, 1);
              vars.q[key] = qid;
            }
          }
        }
      }
    }
  }

  // Inventory balance for final operations, with shortage carry.
  for (int j = 0; j < inst.jobs; ++j) {
    const int last = inst.ops(j) - 1;
    for (int t = 0; t < T; ++t) {
      std::vector<LinearTerm> terms;
      if (t > 0) terms.push_back({vars.I[j][last][t - 1], 1.0});
      for (int r = 0; r < R; ++r) terms.push_back({vars.X[j][last][t][r], 1.0});
      terms.push_back({vars.I[j][last][t], -1.0});
      terms.push_back({vars.phi[j][t], 1.0});
      if (t > 0) terms.push_back({vars.phi[j][t - 1], -1.0});
      model.add_constraint(jt("final_balance", j, t), std::move(terms), Relation::equal,
                           inst.demand(j, t));
    }
  }
  // Flow balance for intermediate operations: production feeds the successor.
  for (int j = 0; j < inst.jobs; ++j) {
    for (int h = 0; h + 1 < inst.ops(j); ++h) {
      for (int t = 0; t < T; ++t) {
        std::vector<LinearTerm> terms;
        if (t > 0) terms.push_back({vars.I[j][h][t - 1], 1.0});
        for (int r = 0; r < R; ++r) terms.push_back({vars.X[j][h][t][r], 1.0});
        terms.push_back({vars.I[j][h][t], -1.0});
        for (int r = 0; r < R; ++r) terms.push_back({vars.X[j][h + 1][t][r], -1.0});
        model.add_constraint(jht("flow_balance", j, h, t), std::move(terms), Relation::equal, 0.0);
      }
    }
  }
  // Capacity with learning.
  for (int m = 0; m < inst.machines; ++m) {
    for (int t = 0; t < T; ++t) {
      std::vector<LinearTerm> terms;
      for (int j = 0; j < inst.jobs; ++j) {
        for (int h = 0; h < inst.ops(j); ++h) {
          if (inst.machine_of(j, h) != m) continue;
          for (int r = 0; r < R; ++r) terms.push_back({vars.X[j][h][t][r], rate_of(j, h, t)});
        }
      }
      terms.push_back({o[m][t], -1.0});
      model.add_constraint(mt("capacity", m, t), std::move(terms), Relation::less_equal,
                           inst.capacity(m, t));
    }
  }
  // Setup linking per position.
  for (int j = 0; j < inst.jobs; ++j) {
    const double g_qty = std::max(inst.total_demand(j), 1.0);
    for (int h = 0; h < inst.ops(j); ++h) {
      for (int t = 0; t < T; ++t) {
        for (int r = 0; r < R; ++r) {
          model.add_constraint(
              pos_pair("setup_link", j, h, t, r, r),
              {{vars.X[j][h][t][r], 1.0}, {vars.y[j][h][t][r], -g_qty}}, Relation::less_equal,
              0.0);
        }
      }
    }
  }
  // Total demand per operation.
  for (int j = 0; j < inst.jobs; ++j) {
    const double total = inst.total_demand(j);
    for (int h = 0; h < inst.ops(j); ++h) {
      std::vector<LinearTerm> terms;
      for (int t = 0; t < T; ++t) {
        for (int r = 0; r < R; ++r) terms.push_back({vars.X[j][h][t][r], 1.0});
      }
      std::ostringstream nm;
      nm << "demand_total[j=" << j + 1 << ",h=" << h + 1 << ']';
      model.add_constraint(nm.str(), std::move(terms), Relation::equal, total);
    }
  }
  // One operation per position.
  for (int t = 0; t < T; ++t) {
    for (int m = 0; m < inst.machines; ++m) {
      for (int r = 0; r < R; ++r) {
        std::vector<LinearTerm> terms;
        for (int j = 0; j < inst.jobs; ++j) {
          for (int h = 0; h < inst.ops(j); ++h) {
            if (inst.machine_of(j, h) == m) terms.push_back({vars.y[j][h][t][r], 1.0});
          }
        }
        if (!terms.empty()) {
          model.add_constraint(tmr("position_occupancy", t, m, r), std::move(terms),
                               Relation::less_equal, 1.0);
        }
      }
    }
  }
  // Within-period availability: stock before each successor position equals
  // the end inventory plus consumption at/after the position minus the
  // not-yet-available production; it must cover the position's own lot.
  for (int j = 0; j < inst.jobs; ++j) {
    const double g_qty = std::max(inst.total_demand(j), 1.0);
    for (int h = 0; h + 1 < inst.ops(j); ++h) {
      const int ms = inst.machine_of(j, h + 1);
      const int mp = inst.machine_of(j, h);
      for (int t = 0; t < T; ++t) {
        for (int r = 0; r < R; ++r) {
          std::vector<LinearTerm> terms;
          terms.push_back({vars.avail[j][h][t][r], 1.0});
          for (int rp = r; rp < R; ++rp) terms.push_back({vars.X[j][h + 1][t][rp], -1.0});
          for (int rp = 0; rp < R; ++rp) {
            if (vars.eta[j][h][t][r][rp] >= 0) terms.push_back({vars.eta[j][h][t][r][rp], 1.0});
          }
          terms.push_back({vars.I[j][h][t], -1.0});
          model.add_constraint(pos_pair("avail_balance", j, h, t, r, r), std::move(terms),
                               Relation::equal, 0.0);
          model.add_constraint(pos_pair("avail_cover", j, h, t, r, r),
                               {{vars.avail[j][h][t][r], 1.0}, {vars.X[j][h + 1][t][r], -1.0}},
                               Relation::greater_equal, 0.0);
          for (int rp = 0; rp < R; ++rp) {
            const int eta_id = vars.eta[j][h][t][r][rp];
            if (eta_id < 0) continue;
            const int qid = vars.q.at(std::make_tuple(t, ms, r, mp, rp));
            model.add_constraint(pos_pair("unavail_bound", j, h, t, r, rp),
                                 {{vars.X[j][h][t][rp], 1.0}, {eta_id, -1.0}, {qid, g_qty}},
                                 Relation::less_equal, g_qty);
            model.add_constraint(pos_pair("unavail_gate", j, h, t, r, rp),
                                 {{eta_id, 1.0}, {qid, -g_qty}}, Relation::less_equal, 0.0);
          }
        }
      }
    }
  }
  // Position-order detectors.
  for (const auto& [key, qid] : vars.q) {
    const auto [t, ms, r, mp, rp] = key;
    std::ostringstream base;
    base << "[t=" << t + 1 << ",ms=" << ms + 1 << ",r=" << r + 1 << ",mp=" << mp + 1
         << ",rp=" << rp + 1 << ']';
    model.add_constraint("order_detect_finish" + base.str(),
                         {{vars.f[t][mp][rp], 1.0}, {vars.s[t][ms][r], -1.0}, {qid, -g_time}},
                         Relation::less_equal, 0.0);
    model.add_constraint("order_detect_start" + base.str(),
                         {{vars.s[t][ms][r], 1.0}, {vars.f[t][mp][rp], -1.0}, {qid, g_time}},
                         Relation::less_equal, g_time);
  }
  // Position durations, ordering, and windows.
  for (int t = 0; t < T; ++t) {
    for (int m = 0; m < inst.machines; ++m) {
      for (int r = 0; r < R; ++r) {
        std::vector<LinearTerm> terms;
        terms.push_back({vars.f[t][m][r], 1.0});
        terms.push_back({vars.s[t][m][r], -1.0});
        for (int j = 0; j < inst.jobs; ++j) {
          for (int h = 0; h < inst.ops(j); ++h) {
            if (inst.machine_of(j, h) == m) terms.push_back({vars.X[j][h][t][r], -rate_of(j, h, t)});
          }
        }
        model.add_constraint(tmr("position_duration", t, m, r), std::move(terms), Relation::equal,
                             0.0);
        if (r + 1 < R) {
          model.add_constraint(tmr("position_order", t, m, r),
                               {{vars.s[t][m][r + 1], 1.0}, {vars.f[t][m][r], -1.0}},
                               Relation::greater_equal, 0.0);
        }
        model.add_constraint(tmr("window_finish", t, m, r), {{vars.f[t][m][r], 1.0}},
                             Relation::less_equal, L * (t + 1));
        model.add_constraint(tmr("window_start", t, m, r), {{vars.s[t][m][r], 1.0}},
                             Relation::greater_equal, L * t);
      }
    }
  }
  // Job finish detection, tardiness, once-per-period setups, overtime caps.
  for (int j = 0; j < inst.jobs; ++j) {
    const int last = inst.ops(j) - 1;
    const int mf = inst.machine_of(j, last);
    for (int t = 0; t < T; ++t) {
      for (int r = 0; r < R; ++r) {
        std::ostringstream nm;
        nm << "job_finish[j=" << j + 1 << ",t=" << t + 1 << ",r=" << r + 1 << ']';
        model.add_constraint(nm.str(),
                             {{vars.F[j][t], 1.0},
                              {vars.f[t][mf][r], -1.0},
                              {vars.y[j][last][t][r], -g_time}},
                             Relation::greater_equal, -g_time);
      }
      model.add_constraint(jt("tardiness_link", j, t),
                           {{vars.Tr[j][t], 1.0}, {vars.F[j][t], -1.0}}, Relation::greater_equal,
                           -inst.due(j, t));
    }
  }
  for (int j = 0; j < inst.jobs; ++j) {
    for (int h = 0; h < inst.ops(j); ++h) {
      for (int t = 0; t < T; ++t) {
        std::vector<LinearTerm> terms;
        for (int r = 0; r < R; ++r) terms.push_back({vars.y[j][h][t][r], 1.0});
        model.add_constraint(jht("setup_once", j, h, t), std::move(terms), Relation::less_equal,
                             1.0);
      }
    }
  }
  for (int m = 0; m < inst.machines; ++m) {
    for (int t = 0; t < T; ++t) {
      model.add_constraint(mt("overtime_cap", m, t), {{o[m][t], 1.0}}, Relation::less_equal,
                           inst.overtime_limit(m, t));
    }
  }
  // The chain-order cutting plane: consecutive operations set up in the same
  // period must run strictly in order.
  if (with_cut) {
    for (int j = 0; j < inst.jobs; ++j) {
      for (int h = 0; h + 1 < inst.ops(j); ++h) {
        const int ms = inst.machine_of(j, h + 1);
        const int mp = inst.machine_of(j, h);
        for (int t = 0; t < T; ++t) {
          for (int r = 0; r < R; ++r) {
            for (int rp = 0; rp < R; ++rp) {
              if (ms == mp && r == rp) continue;
              model.add_constraint(pos_pair("chain_cut", j, h, t, r, rp),
                                   {{vars.s[t][ms][r], 1.0},
                                    {vars.f[t][mp][rp], -1.0},
                                    {vars.y[j][h][t][rp], -g_time},
                                    {vars.y[j][h + 1][t][r], -g_time}},
                                   Relation::greater_equal, -2.0 * g_time);
            }
          }
        }
      }
    }
  }

  return {std::move(model), std::move(vars)};
}

Solution decode_model1(const Instance& inst, const Model1Vars& vars,
                       const milp::SolveResult& result) {
  if (!result.has_solution()) {
    throw std::invalid_argument("decode_model1: result carries no solution (status " +
                                milp::to_string(result.status) + ")");
  }
  const auto& v = result.values;
  auto at = [&v](int id) {
    if (id < 0 || id >= static_cast<int>(v.size())) {
      throw std::invalid_argument("decode_model1: missing variable value");
    }
    return v[id];
  };

  Solution sol = Solution::zeros(inst);
  for (int j = 0; j < inst.jobs; ++j) {
    for (int h = 0; h < inst.ops(j); ++h) {
      const int m = inst.machine_of(j, h);
      for (int t = 0; t < inst.periods; ++t) {
        double lot = 0.0;
        int pos = -1;
        for (int r = 0; r < inst.positions; ++r) {
          lot += std::max(0.0, at(vars.X[j][h][t][r]));
          if (at(vars.y[j][h][t][r]) > 0.5) pos = r;
        }
        if (pos >= 0) {
          sol.performed[j][h][t] = 1;
          sol.x[j][h][t] = lot;
          sol.start[j][h][t] = at(vars.s[t][m][pos]);
          sol.finish[j][h][t] = at(vars.f[t][m][pos]);
        }
      }
    }
  }
  for (int m = 0; m < inst.machines; ++m) {
    for (int t = 0; t < inst.periods; ++t) {
      sol.overtime(m, t) = std::clamp(at(vars.o[m][t]), 0.0, inst.overtime_limit(m, t));
    }
  }
  // Sequencing among performed operations on a shared machine follows the
  // decoded start times; ties break on (job, op) for determinism.
  for (int m = 0; m < inst.machines; ++m) {
    for (int t = 0; t < inst.periods; ++t) {
      std::vector<std::pair<int, int>> on_machine;
      for (int j = 0; j < inst.jobs; ++j) {
        for (int h = 0; h < inst.ops(j); ++h) {
          if (inst.machine_of(j, h) == m && sol.performed[j][h][t]) on_machine.emplace_back(j, h);
        }
      }
      std::sort(on_machine.begin(), on_machine.end(),
                [&sol, t](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                  const double sa = sol.start[a.first][a.second][t];
                  const double sb = sol.start[b.first][b.second][t];
                  if (sa != sb) return sa < sb;
                  return a < b;
                });
      for (size_t u = 0; u < on_machine.size(); ++u) {
        for (size_t w = u + 1; w < on_machine.size(); ++w) {
          sol.sequence.push_back({on_machine[u].first, on_machine[u].second, on_machine[w].first,
                                  on_machine[w].second, t});
        }
      }
    }
  }
  sol.job_finish = job_finish_times(inst, sol);
  sol.tardiness = compute_tardiness(inst, sol);
  sol.objective = evaluate_objective(inst, sol);
  const double rel = std::abs(sol.objective - result.objective) /
                     std::max(1.0, std::abs(result.objective));
  if (rel > 1e-5) {
    std::ostringstream msg;
    msg << "decode_model1: recomputed objective " << sol.objective
        << " disagrees with the solver's " << result.objective;
    throw std::runtime_error(msg.str());
  }
  return sol;
}

}  // namespace lotforge
