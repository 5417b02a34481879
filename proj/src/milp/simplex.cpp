#include "lotforge/milp/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lotforge::milp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeas = 1e-7;      // bound violation tolerance
constexpr double kPivotMin = 1e-8;  // smallest trusted pivot magnitude
constexpr long kRefactorEvery = 256;
constexpr long kStallLimit = 256;   // iterations without progress before Bland

}  // namespace

SimplexSolver::SimplexSolver(const LpProblem& problem) {
  n_ = static_cast<int>(problem.cols.size());
  m_ = problem.num_rows;
  total_ = n_ + m_;
  cols_ = problem.cols;
  cols_.resize(total_);
  cost_ = problem.cost;
  cost_.resize(total_, 0.0);
  lower_ = problem.lower;
  upper_ = problem.upper;
  lower_.resize(total_);
  upper_.resize(total_);
  b_ = problem.rhs;
  for (int i = 0; i < m_; ++i) {
    cols_[n_ + i].entries = {{i, 1.0}};
    switch (problem.relation[i]) {
      case 0: lower_[n_ + i] = 0.0; upper_[n_ + i] = kInf; break;   // <=
      case 1: lower_[n_ + i] = 0.0; upper_[n_ + i] = 0.0; break;    // =
      case 2: lower_[n_ + i] = -kInf; upper_[n_ + i] = 0.0; break;  // >=
      default: throw std::invalid_argument("bad row relation");
    }
  }
  stat_.assign(total_, VStat::at_lower);
  basic_.resize(m_);
  row_of_.assign(total_, -1);
  x_ = Eigen::VectorXd::Zero(total_);
  reset_basis();
}

void SimplexSolver::reset_basis() {
  for (int v = 0; v < total_; ++v) row_of_[v] = -1;
  for (int i = 0; i < m_; ++i) {
    basic_[i] = n_ + i;
    row_of_[n_ + i] = i;
    stat_[n_ + i] = VStat::basic;
  }
  for (int v = 0; v < n_; ++v) {
    if (stat_[v] == VStat::basic) stat_[v] = VStat::at_lower;
  }
  binv_ = Eigen::MatrixXd::Identity(m_, m_);
  pivots_since_refactor_ = 0;
}

void SimplexSolver::set_bounds(int structural_var, double lower, double upper) {
  lower_[structural_var] = lower;
  upper_[structural_var] = upper;
}

void SimplexSolver::prime_nonbasics() {
  for (int v = 0; v < total_; ++v) {
    if (stat_[v] == VStat::basic) continue;
    const double lo = lower_[v], up = upper_[v];
    if (lo == -kInf && up == kInf) {
      stat_[v] = VStat::free_nb;
      x_[v] = 0.0;
      continue;
    }
    // Keep the side the previous basis used when it is still finite.
    if (stat_[v] == VStat::at_upper && up < kInf) {
      x_[v] = up;
    } else if (lo > -kInf) {
      stat_[v] = VStat::at_lower;
      x_[v] = lo;
    } else {
      stat_[v] = VStat::at_upper;
      x_[v] = up;
    }
  }
}

void SimplexSolver::compute_basic_values() {
  Eigen::VectorXd r = b_;
  for (int v = 0; v < total_; ++v) {
    if (stat_[v] == VStat::basic || x_[v] == 0.0) continue;
    for (const auto& [row, coeff] : cols_[v].entries) r[row] -= coeff * x_[v];
  }
  const Eigen::VectorXd xb = binv_ * r;
  for (int i = 0; i < m_; ++i) x_[basic_[i]] = xb[i];
}

void SimplexSolver::refactor() {
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m_, m_);
  for (int i = 0; i < m_; ++i) {
    for (const auto& [row, coeff] : cols_[basic_[i]].entries) basis(row, i) = coeff;
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
  binv_ = lu.inverse();
  pivots_since_refactor_ = 0;
  // A non-finite inverse means the basis went numerically singular; the slack
  // basis is always valid, so restart from it.
  if (!binv_.allFinite()) reset_basis();
}

double SimplexSolver::infeasibility_sum() const {
  double sum = 0.0;
  for (int i = 0; i < m_; ++i) {
    const int v = basic_[i];
    if (x_[v] < lower_[v]) sum += lower_[v] - x_[v];
    if (x_[v] > upper_[v]) sum += x_[v] - upper_[v];
  }
  return sum;
}

bool SimplexSolver::build_phase1_costs(Eigen::VectorXd& cb) const {
  bool any = false;
  for (int i = 0; i < m_; ++i) {
    const int v = basic_[i];
    if (x_[v] < lower_[v] - kFeas) {
      cb[i] = -1.0;
      any = true;
    } else if (x_[v] > upper_[v] + kFeas) {
      cb[i] = 1.0;
      any = true;
    } else {
      cb[i] = 0.0;
    }
  }
  return any;
}

double SimplexSolver::reduced_cost(int var, const Eigen::VectorXd& y) const {
  double d = cost_[var];
  for (const auto& [row, coeff] : cols_[var].entries) d -= y[row] * coeff;
  return d;
}

int SimplexSolver::price(const Eigen::VectorXd& y, bool phase1, bool bland, int& direction) const {
  double scale = 1.0;
  if (!phase1) {
    for (int v = 0; v < n_; ++v) scale = std::max(scale, std::abs(cost_[v]));
  }
  const double dtol = 1e-9 * scale;
  int best = -1, best_dir = 0;
  double best_score = dtol;
  for (int v = 0; v < total_; ++v) {
    const VStat st = stat_[v];
    if (st == VStat::basic) continue;
    if (st != VStat::free_nb && upper_[v] - lower_[v] < 1e-12) continue;  // fixed
    double d = phase1 ? 0.0 : cost_[v];
    for (const auto& [row, coeff] : cols_[v].entries) d -= y[row] * coeff;
    double score;
    int dir;
    if (st == VStat::at_lower && d < -dtol) {
      score = -d;
      dir = 1;
    } else if (st == VStat::at_upper && d > dtol) {
      score = d;
      dir = -1;
    } else if (st == VStat::free_nb && std::abs(d) > dtol) {
      score = std::abs(d);
      dir = d < 0 ? 1 : -1;
    } else {
      continue;
    }
    if (bland) {
      direction = dir;
      return v;  // lowest eligible index
    }
    if (score > best_score) {
      best_score = score;
      best = v;
      best_dir = dir;
    }
  }
  direction = best_dir;
  return best;
}

LpStatus SimplexSolver::solve(const std::function<bool()>& interrupted) {
  objective_ = 0.0;
  for (int v = 0; v < total_; ++v) {
    if (lower_[v] > upper_[v] + 1e-12) return LpStatus::infeasible;
  }
  if (m_ == 0) {
    // Pure bounds: every variable goes to its cheapest finite bound.
    for (int v = 0; v < n_; ++v) {
      if (cost_[v] > 0.0) {
        if (lower_[v] == -kInf) return LpStatus::unbounded;
        x_[v] = lower_[v];
      } else if (cost_[v] < 0.0) {
        if (upper_[v] == kInf) return LpStatus::unbounded;
        x_[v] = upper_[v];
      } else {
        x_[v] = std::isfinite(lower_[v]) ? lower_[v] : (std::isfinite(upper_[v]) ? upper_[v] : 0.0);
      }
      objective_ += cost_[v] * x_[v];
    }
    return LpStatus::optimal;
  }

  prime_nonbasics();
  compute_basic_values();

  const long iter_limit = 20000 + 200L * total_;
  const double feas_scale = std::max(1.0, b_.size() ? b_.cwiseAbs().maxCoeff() : 1.0);
  Eigen::VectorXd cb(m_), y(m_), w(m_);

  for (const bool phase1 : {true, false}) {
    bool bland = false;
    long stall = 0;
    double best_progress = kInf;
    int no_block_retries = 0;
    int infeasible_retries = 0;
    long iters = 0;

    while (true) {
      if (interrupted && (total_iterations_ & 127) == 0 && interrupted()) {
        return LpStatus::interrupted;
      }
      if (++iters > iter_limit) return LpStatus::iteration_limit;
      ++total_iterations_;

      if (phase1) {
        if (!build_phase1_costs(cb)) break;  // feasible basis: on to phase two
      } else {
        for (int i = 0; i < m_; ++i) cb[i] = cost_[basic_[i]];
      }
      y.noalias() = binv_.transpose() * cb;

      int direction = 0;
      const int entering = price(y, phase1, bland, direction);
      if (entering < 0) {
        if (!phase1) break;  // optimal
        if (infeasibility_sum() <= kFeas * feas_scale) break;
        // Rule out a degraded factorization before declaring infeasibility.
        if (infeasible_retries++ == 0) {
          refactor();
          compute_basic_values();
          continue;
        }
        return LpStatus::infeasible;
      }

      // FTRAN: entering column expressed in the current basis.
      w.setZero();
      for (const auto& [row, coeff] : cols_[entering].entries) w += coeff * binv_.col(row);

      const double sigma = direction;
      double best_theta = kInf;
      int leave_row = -1;
      int leave_to_upper = 0;
      double best_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (std::abs(w[i]) < 1e-10) continue;
        const int v = basic_[i];
        const double rate = -sigma * w[i];
        const double val = x_[v];
        double theta = kInf;
        int to_upper = 0;
        if (phase1 && val < lower_[v] - kFeas) {
          if (rate > 0) theta = (lower_[v] - val) / rate;  // rises to its violated bound
        } else if (phase1 && val > upper_[v] + kFeas) {
          if (rate < 0) {
            theta = (upper_[v] - val) / rate;
            to_upper = 1;
          }
        } else if (rate > 0 && upper_[v] < kInf) {
          theta = (upper_[v] - val) / rate;
          to_upper = 1;
        } else if (rate < 0 && lower_[v] > -kInf) {
          theta = (lower_[v] - val) / rate;
        }
        if (theta == kInf) continue;
        theta = std::max(theta, 0.0);
        const bool better = theta < best_theta - 1e-10 ||
                            (theta < best_theta + 1e-10 && std::abs(w[i]) > best_pivot);
        if (better) {
          best_theta = theta;
          leave_row = i;
          leave_to_upper = to_upper;
          best_pivot = std::abs(w[i]);
        }
      }
      const double range = upper_[entering] - lower_[entering];
      const bool flip = std::isfinite(range) && range < best_theta - 1e-12;

      if (leave_row < 0 && !flip) {
        if (!phase1) return LpStatus::unbounded;
        // Improving phase-one directions always block somewhere; suspect the
        // factorization, retry a couple of times, then give up honestly.
        if (no_block_retries++ < 2) {
          refactor();
          compute_basic_values();
          continue;
        }
        return LpStatus::error;
      }

      const double theta = flip ? range : best_theta;
      x_[entering] += sigma * theta;
      if (theta != 0.0) {
        for (int i = 0; i < m_; ++i) x_[basic_[i]] -= sigma * theta * w[i];
      }
      if (flip) {
        stat_[entering] = stat_[entering] == VStat::at_lower ? VStat::at_upper : VStat::at_lower;
      } else {
        if (best_pivot < kPivotMin) {
          refactor();
          compute_basic_values();
          continue;
        }
        const int leaving = basic_[leave_row];
        stat_[leaving] = leave_to_upper ? VStat::at_upper : VStat::at_lower;
        x_[leaving] = leave_to_upper ? upper_[leaving] : lower_[leaving];
        row_of_[leaving] = -1;
        basic_[leave_row] = entering;
        row_of_[entering] = leave_row;
        stat_[entering] = VStat::basic;
        // Product-form update of the inverse.
        const double pivot = w[leave_row];
        binv_.row(leave_row) /= pivot;
        for (int i = 0; i < m_; ++i) {
          if (i == leave_row || w[i] == 0.0) continue;
          binv_.row(i) -= w[i] * binv_.row(leave_row);
        }
        if (++pivots_since_refactor_ >= kRefactorEvery) {
          refactor();
          compute_basic_values();
        }
      }

      double progress;
      if (phase1) {
        progress = infeasibility_sum();
      } else {
        progress = 0.0;
        for (int v = 0; v < n_; ++v) progress += cost_[v] * x_[v];
      }
      if (progress < best_progress - 1e-10) {
        best_progress = progress;
        stall = 0;
        bland = false;
      } else if (++stall > kStallLimit) {
        bland = true;
      }
    }
  }

  // Verify the solution satisfies Ax = b before reporting; refactor once if
  // the eta updates drifted.
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::VectorXd residual = b_;
    for (int v = 0; v < total_; ++v) {
      if (x_[v] == 0.0) continue;
      for (const auto& [row, coeff] : cols_[v].entries) residual[row] -= coeff * x_[v];
    }
    const double drift = residual.cwiseAbs().maxCoeff();
    if (drift <= 1e-6 * feas_scale && infeasibility_sum() <= 1e-5 * feas_scale) break;
    if (attempt == 1) return LpStatus::error;
    refactor();
    compute_basic_values();
  }
  objective_ = 0.0;
  for (int v = 0; v < n_; ++v) objective_ += cost_[v] * x_[v];
  return LpStatus::optimal;
}

std::vector<double> SimplexSolver::structural_values() const {
  return std::vector<double>(x_.data(), x_.data() + n_);
}

}  // namespace lotforge::milp
