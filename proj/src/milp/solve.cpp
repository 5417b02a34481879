#include "lotforge/milp/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "lotforge/milp/simplex.hpp"

namespace lotforge::milp {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible_at_limit: return "feasible-at-limit";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::unknown: return "unknown";
    case SolveStatus::error: return "error";
  }
  return "error";
}

namespace {

using Clock = std::chrono::steady_clock;

struct BoundChange {
  int var;
  double lower, upper;
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, const SolveOptions& opts)
      : model_(model), opts_(opts), start_(Clock::now()) {
    const int n = model.num_variables();
    lb_.resize(n);
    ub_.resize(n);
    for (int v = 0; v < n; ++v) {
      lb_[v] = model.variables()[v].lower;
      ub_[v] = model.variables()[v].upper;
    }
    LpProblem lp;
    lp.num_rows = model.num_constraints();
    lp.cols.resize(n);
    lp.cost.resize(n);
    lp.lower = lb_;
    lp.upper = ub_;
    lp.rhs.resize(lp.num_rows);
    lp.relation.resize(lp.num_rows);
    for (int r = 0; r < lp.num_rows; ++r) {
      const Constraint& c = model.constraints()[r];
      for (const auto& t : c.terms) lp.cols[t.var].entries.emplace_back(r, t.coeff);
      lp.rhs[r] = c.rhs;
      lp.relation[r] = c.relation == Relation::less_equal ? 0
                       : c.relation == Relation::equal   ? 1
                                                         : 2;
    }
    for (int v = 0; v < n; ++v) lp.cost[v] = model.variables()[v].objective;
    simplex_.emplace(lp);
    for (int v = 0; v < n; ++v) {
      if (model.variables()[v].kind == VarKind::binary) binaries_.push_back(v);
    }
  }

  SolveResult run() {
    SolveResult res;
    const bool completed = dfs(-kInfinity, 0);
    res.nodes = nodes_;
    res.wall_seconds = elapsed();
    if (unbounded_) {
      res.status = SolveStatus::unbounded;
      res.message = "LP relaxation unbounded";
      return res;
    }
    const bool have_inc = have_incumbent_;
    const double gap_slack =
        have_inc ? opts_.rel_gap * std::max(1.0, std::abs(incumbent_obj_)) : 0.0;
    if (completed) {
      if (have_inc) {
        res.status = SolveStatus::optimal;
        res.objective = incumbent_obj_;
        res.best_bound = std::min(incumbent_obj_, std::min(open_min_, incumbent_obj_ - gap_slack));
        res.values = incumbent_;
      } else if (cutoff_pruned_) {
        res.status = SolveStatus::unknown;
        res.best_bound = open_min_;
        res.message = "no solution below the cutoff";
      } else {
        res.status = SolveStatus::infeasible;
        res.best_bound = kInfinity;
      }
      if (lp_trouble_ && res.status == SolveStatus::optimal) {
        // Subtrees abandoned on numerical grounds keep the bound honest.
        res.best_bound = std::min(res.best_bound, open_min_);
        if (res.best_bound < res.objective - gap_slack) {
          res.status = SolveStatus::feasible_at_limit;
          res.message = "numerical trouble in an LP subtree";
        }
      }
    } else {
      if (have_inc) {
        res.status = SolveStatus::feasible_at_limit;
        res.objective = incumbent_obj_;
        res.values = incumbent_;
        res.best_bound = std::min(open_min_, incumbent_obj_ - gap_slack);
      } else {
        res.status = SolveStatus::unknown;
        res.best_bound = open_min_;
        res.message = "limit reached before any feasible point was found";
      }
    }
    return res;
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  bool time_up() const {
    if (std::isfinite(opts_.time_limit) && elapsed() >= opts_.time_limit) return true;
    if (opts_.node_limit >= 0 && nodes_ >= opts_.node_limit) return true;
    return false;
  }

  double effective_cut() const {
    double cut = opts_.cutoff;
    if (have_incumbent_) {
      cut = std::min(cut, incumbent_obj_ - opts_.rel_gap * std::max(1.0, std::abs(incumbent_obj_)));
    }
    return cut;
  }

  void set_bound(int var, double lo, double hi, std::vector<BoundChange>& undo) {
    undo.push_back({var, lb_[var], ub_[var]});
    lb_[var] = lo;
    ub_[var] = hi;
    simplex_->set_bounds(var, lo, hi);
  }

  void undo_all(std::vector<BoundChange>& undo) {
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      lb_[it->var] = it->lower;
      ub_[it->var] = it->upper;
      simplex_->set_bounds(it->var, it->lower, it->upper);
    }
    undo.clear();
  }

  bool is_binary(int var) const { return model_.variables()[var].kind == VarKind::binary; }

  // Activity-based bound tightening over all rows until fixpoint. Returns
  // false when some row is proven infeasible under the node bounds.
  bool propagate(std::vector<BoundChange>& undo) {
    for (int pass = 0; pass < 10; ++pass) {
      bool changed = false;
      for (const Constraint& c : model_.constraints()) {
        if (c.relation != Relation::greater_equal) {
          if (!tighten_le(c, 1.0, undo, changed)) return false;
        }
        if (c.relation != Relation::less_equal) {
          if (!tighten_le(c, -1.0, undo, changed)) return false;
        }
      }
      if (!changed) break;
    }
    return true;
  }

  // Treats sign * (terms) <= sign * rhs as a "<=" row.
  bool tighten_le(const Constraint& c, double sign, std::vector<BoundChange>& undo,
                  bool& changed) {
    double min_act = 0.0;
    int inf_count = 0;
    int inf_var = -1;
    for (const auto& t : c.terms) {
      const double a = sign * t.coeff;
      const double contrib = a > 0 ? a * lb_[t.var] : a * ub_[t.var];
      if (std::isinf(contrib)) {
        ++inf_count;
        inf_var = t.var;
      } else {
        min_act += contrib;
      }
    }
    const double rhs = sign * c.rhs;
    const double slack_tol = 1e-7 * std::max(1.0, std::abs(rhs));
    if (inf_count == 0 && min_act > rhs + slack_tol) return false;
    if (inf_count >= 2) return true;
    for (const auto& t : c.terms) {
      const double a = sign * t.coeff;
      if (a == 0.0) continue;
      if (inf_count == 1 && t.var != inf_var) continue;
      double others;
      if (inf_count == 1) {
        others = min_act;
      } else {
        others = min_act - (a > 0 ? a * lb_[t.var] : a * ub_[t.var]);
      }
      const double residual = rhs - others;
      if (a > 0) {
        double new_ub = residual / a;
        if (is_binary(t.var)) new_ub = std::floor(new_ub + 1e-6);
        if (new_ub < ub_[t.var] - 1e-7) {
          if (new_ub < lb_[t.var] - 1e-9) return false;
          set_bound(t.var, lb_[t.var], std::max(new_ub, lb_[t.var]), undo);
          changed = true;
        }
      } else {
        double new_lb = residual / a;
        if (is_binary(t.var)) new_lb = std::ceil(new_lb - 1e-6);
        if (new_lb > lb_[t.var] + 1e-7) {
          if (new_lb > ub_[t.var] + 1e-9) return false;
          set_bound(t.var, std::min(new_lb, ub_[t.var]), ub_[t.var], undo);
          changed = true;
        }
      }
    }
    return true;
  }

  int pick_branch_variable() const {
    int best = -1;
    int best_priority = std::numeric_limits<int>::min();
    double best_frac = 0.0;
    for (int v : binaries_) {
      if (ub_[v] - lb_[v] < 0.5) continue;  // fixed by branching or propagation
      const double val = simplex_->value(v);
      const double frac = std::min(val - std::floor(val), std::ceil(val) - val);
      if (frac <= kIntTol) continue;
      const int prio = model_.variables()[v].branch_priority;
      if (prio > best_priority || (prio == best_priority && frac > best_frac + 1e-12)) {
        best = v;
        best_priority = prio;
        best_frac = frac;
      }
    }
    return best;
  }

  void track_open(double bound) { open_min_ = std::min(open_min_, bound); }

  // All binaries are within the integer tolerance of {0,1}. Re-solving once
  // with them fixed at the rounded values removes the epsilon-fractional dust
  // the big-M rows would otherwise leave on the continuous variables.
  void accept_incumbent() {
    double obj = simplex_->objective();
    std::vector<double> values;
    std::vector<BoundChange> polish;
    for (int v : binaries_) {
      const double r = std::round(simplex_->value(v));
      set_bound(v, r, r, polish);
    }
    const LpStatus ps = simplex_->solve();
    if (ps == LpStatus::optimal) {
      obj = simplex_->objective();
      values = simplex_->structural_values();
    }
    undo_all(polish);
    if (values.empty()) {
      // Polishing failed (boundary-degenerate rounding); keep the raw point.
      simplex_->solve();
      obj = simplex_->objective();
      values = simplex_->structural_values();
    }
    if (!have_incumbent_ || obj < incumbent_obj_) {
      have_incumbent_ = true;
      incumbent_obj_ = obj;
      incumbent_ = std::move(values);
    }
  }

  // Returns false when the search was cut short (time/node limit, unbounded).
  bool dfs(double parent_bound, int depth) {
    if (time_up()) {
      track_open(parent_bound);
      return false;
    }
    ++nodes_;
    std::vector<BoundChange> undo;
    if (!propagate(undo)) {
      undo_all(undo);
      return true;
    }
    const LpStatus ls = simplex_->solve([this] { return time_up(); });
    if (ls == LpStatus::interrupted) {
      track_open(parent_bound);
      undo_all(undo);
      return false;
    }
    if (ls == LpStatus::infeasible) {
      undo_all(undo);
      return true;
    }
    if (ls == LpStatus::unbounded) {
      unbounded_ = true;
      undo_all(undo);
      return false;
    }
    if (ls != LpStatus::optimal) {
      // Iteration limit or numerical failure: abandon the subtree but keep
      // the reported bound honest.
      lp_trouble_ = true;
      track_open(parent_bound);
      undo_all(undo);
      return true;
    }
    const double bound = std::max(parent_bound, simplex_->objective());
    if (bound >= effective_cut() - 1e-12) {
      if (opts_.cutoff < kInfinity && bound >= opts_.cutoff - 1e-12) cutoff_pruned_ = true;
      undo_all(undo);
      return true;
    }
    const int branch_var = pick_branch_variable();
    if (branch_var < 0) {
      accept_incumbent();
      undo_all(undo);
      return true;
    }
    const double val = simplex_->value(branch_var);
    const double first = val >= 0.5 ? 1.0 : 0.0;
    bool completed = true;
    for (int child = 0; child < 2; ++child) {
      const double fix = child == 0 ? first : 1.0 - first;
      if (bound >= effective_cut() - 1e-12) break;
      std::vector<BoundChange> branch_undo;
      set_bound(branch_var, fix, fix, branch_undo);
      const bool ok = dfs(bound, depth + 1);
      undo_all(branch_undo);
      if (!ok) {
        if (child == 0) track_open(bound);  // the sibling subtree stays open
        completed = false;
        break;
      }
    }
    undo_all(undo);
    return completed;
  }

  const MilpModel& model_;
  SolveOptions opts_;
  Clock::time_point start_;
  std::optional<SimplexSolver> simplex_;
  std::vector<double> lb_, ub_;
  std::vector<int> binaries_;
  std::vector<double> incumbent_;
  bool have_incumbent_ = false;
  double incumbent_obj_ = kInfinity;
  double open_min_ = kInfinity;
  std::int64_t nodes_ = 0;
  bool unbounded_ = false;
  bool cutoff_pruned_ = false;
  bool lp_trouble_ = false;
};

}  // namespace

SolveResult solve(const MilpModel& model, const SolveOptions& opts) {
  const auto problems = model.check();
  if (!problems.empty()) {
    SolveResult res;
    res.status = SolveStatus::error;
    res.message = "malformed model: " + problems.front();
    return res;
  }
  BranchAndBound bnb(model, opts);
  return bnb.run();
}

}  // namespace lotforge::milp
