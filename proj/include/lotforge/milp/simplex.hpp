#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lotforge::milp {

/// One sparse column: (row, coefficient) entries, rows strictly increasing.
struct LpColumn {
  std::vector<std::pair<int, double>> entries;
};

/// LP in row form "Ax <rel> b, lower <= x <= upper, minimize c'x".
/// Relations per row: 0 = "<=", 1 = "=", 2 = ">=".
struct LpProblem {
  int num_rows = 0;
  std::vector<LpColumn> cols;
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<int> relation;
  Eigen::VectorXd rhs;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit, interrupted, error };

/// Bounded-variable primal simplex with an explicit dense basis inverse.
/// Rows become equalities via one slack each; the initial basis is the slack
/// identity. Phase one drives bound violations of basic variables to zero
/// with a composite objective, phase two optimizes the true costs. The basis
/// persists across solves, so bound changes re-solve warm.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LpProblem& problem);

  void set_bounds(int structural_var, double lower, double upper);
  double lower_bound(int structural_var) const { return lower_[structural_var]; }
  double upper_bound(int structural_var) const { return upper_[structural_var]; }

  /// Optimizes from the current basis. `interrupted` is polled periodically.
  LpStatus solve(const std::function<bool()>& interrupted = nullptr);

  double objective() const { return objective_; }
  double value(int structural_var) const { return x_[structural_var]; }
  std::vector<double> structural_values() const;
  long iterations() const { return total_iterations_; }

  /// Discards the current basis (slack restart). Used on numerical trouble.
  void reset_basis();

 private:
  enum class VStat : unsigned char { basic, at_lower, at_upper, free_nb };

  void prime_nonbasics();
  void compute_basic_values();
  void refactor();
  double infeasibility_sum() const;
  bool build_phase1_costs(Eigen::VectorXd& cb) const;
  int price(const Eigen::VectorXd& y, bool phase1, bool bland, int& direction) const;
  double reduced_cost(int var, const Eigen::VectorXd& y) const;

  int n_ = 0;         // structural count
  int m_ = 0;         // rows
  int total_ = 0;     // n_ + m_
  std::vector<LpColumn> cols_;
  std::vector<double> cost_, lower_, upper_;
  Eigen::VectorXd b_;
  std::vector<VStat> stat_;
  std::vector<int> basic_;    // size m_: variable in each basis row
  std::vector<int> row_of_;   // size total_: basis row or -1
  Eigen::VectorXd x_;         // all variable values
  Eigen::MatrixXd binv_;
  double objective_ = 0.0;
  long total_iterations_ = 0;
  long pivots_since_refactor_ = 0;
};

}  // namespace lotforge::milp
