#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lotforge/milp/simplex.hpp"
#include "lotforge/rng.hpp"

using namespace lotforge;
using namespace lotforge::milp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LpProblem make_problem(int rows, int cols) {
  LpProblem p;
  p.num_rows = rows;
  p.cols.resize(cols);
  p.cost.assign(cols, 0.0);
  p.lower.assign(cols, 0.0);
  p.upper.assign(cols, kInf);
  p.relation.assign(rows, 0);
  p.rhs = Eigen::VectorXd::Zero(rows);
  return p;
}

}  // namespace

TEST_CASE("single bound row") {
  // min x subject to x >= 3
  LpProblem p = make_problem(1, 1);
  p.cols[0].entries = {{0, 1.0}};
  p.cost[0] = 1.0;
  p.relation[0] = 2;
  p.rhs[0] = 3.0;
  SimplexSolver s(p);
  CHECK(s.solve() == LpStatus::optimal);
  CHECK(s.objective() == doctest::Approx(3.0));
  CHECK(s.value(0) == doctest::Approx(3.0));
}

TEST_CASE("two-variable polytope") {
  // max 3x + 4y st x + 2y <= 14, 3x - y >= 0, x - y <= 2  ->  (6, 4)
  LpProblem p = make_problem(3, 2);
  p.cols[0].entries = {{0, 1.0}, {1, 3.0}, {2, 1.0}};
  p.cols[1].entries = {{0, 2.0}, {1, -1.0}, {2, -1.0}};
  p.cost = {-3.0, -4.0};
  p.relation = {0, 2, 0};
  p.rhs << 14.0, 0.0, 2.0;
  SimplexSolver s(p);
  CHECK(s.solve() == LpStatus::optimal);
  CHECK(s.objective() == doctest::Approx(-34.0));
  CHECK(s.value(0) == doctest::Approx(6.0));
  CHECK(s.value(1) == doctest::Approx(4.0));
}

TEST_CASE("row-free bounded minimization") {
  LpProblem p = make_problem(0, 2);
  p.cost = {-1.0, 2.0};
  p.lower = {0.0, -3.0};
  p.upper = {5.0, 8.0};
  SimplexSolver s(p);
  CHECK(s.solve() == LpStatus::optimal);
  CHECK(s.objective() == doctest::Approx(-5.0 - 6.0));
}

TEST_CASE("infeasible bounds are detected") {
  // x >= 3 and x <= 1
  LpProblem p = make_problem(2, 1);
  p.cols[0].entries = {{0, 1.0}, {1, 1.0}};
  p.cost[0] = 0.0;
  p.relation = {2, 0};
  p.rhs << 3.0, 1.0;
  SimplexSolver s(p);
  CHECK(s.solve() == LpStatus::infeasible);
}

TEST_CASE("unbounded direction is detected") {
  LpProblem p = make_problem(1, 2);
  p.cols[0].entries = {{0, 1.0}};
  p.cols[1].entries = {{0, -1.0}};
  p.cost = {-1.0, 0.0};
  p.relation[0] = 0;
  p.rhs[0] = 4.0;  // x - y <= 4, both >= 0: x can run away with y
  SimplexSolver s(p);
  CHECK(s.solve() == LpStatus::unbounded);
}

TEST_CASE("equality with a free variable") {
  // min 2x + y st x + y = 10, y in [0,4], x free  ->  x = 6, y = 4
  LpProblem p = make_problem(1, 2);
  p.cols[0].entries = {{0, 1.0}};
  p.cols[1].entries = {{0, 1.0}};
  p.cost = {2.0, 1.0};
  p.lower = {-kInf, 0.0};
  p.upper = {kInf, 4.0};
  p.relation[0] = 1;
  p.rhs[0] = 10.0;
  SimplexSolver s(p);
  CHECK(s.solve() == LpStatus::optimal);
  CHECK(s.objective() == doctest::Approx(16.0));
  CHECK(s.value(0) == doctest::Approx(6.0));
  CHECK(s.value(1) == doctest::Approx(4.0));
}

TEST_CASE("warm restart after bound changes matches a fresh solve") {
  Rng rng(2024);
  for (int round = 0; round < 30; ++round) {
    const int n = rng.uniform_int(3, 8);
    const int m = rng.uniform_int(2, 6);
    LpProblem p = make_problem(m, n);
    // Feasible by construction: rows bound a random interior point.
    std::vector<double> x0(n);
    for (int v = 0; v < n; ++v) {
      x0[v] = rng.uniform(0.0, 5.0);
      p.lower[v] = 0.0;
      p.upper[v] = 10.0;
      p.cost[v] = rng.uniform(-5.0, 5.0);
    }
    for (int r = 0; r < m; ++r) {
      double act = 0.0;
      for (int v = 0; v < n; ++v) {
        const double a = rng.uniform_int(-3, 3);
        if (a != 0.0) {
          p.cols[v].entries.emplace_back(r, a);
          act += a * x0[v];
        }
      }
      p.relation[r] = 0;
      p.rhs[r] = act + rng.uniform(0.1, 3.0);
    }
    SimplexSolver warm(p);
    REQUIRE(warm.solve() == LpStatus::optimal);
    const double first = warm.objective();

    // The interior point is feasible, so the optimum cannot exceed its cost.
    double x0cost = 0.0;
    for (int v = 0; v < n; ++v) x0cost += p.cost[v] * x0[v];
    CHECK(first <= x0cost + 1e-7);

    // Tighten a couple of bounds, re-solve warm, compare to a cold solver.
    const int v1 = rng.uniform_int(0, n - 1);
    const int v2 = rng.uniform_int(0, n - 1);
    const double lo = rng.uniform(0.0, 2.0);
    const double hi = rng.uniform(3.0, 6.0);
    warm.set_bounds(v1, lo, 10.0);
    warm.set_bounds(v2, 0.0, hi);
    const LpStatus warm_status = warm.solve();

    // Replay the same bound updates on a cold solver.
    LpProblem q = p;
    q.lower[v1] = lo;
    q.upper[v1] = 10.0;
    q.lower[v2] = 0.0;
    q.upper[v2] = hi;
    SimplexSolver cold(q);
    const LpStatus cold_status = cold.solve();
    REQUIRE(warm_status == cold_status);
    if (warm_status == LpStatus::optimal) {
      CHECK(warm.objective() == doctest::Approx(cold.objective()).epsilon(1e-7));
      // Restricting a problem can only raise the minimum.
      CHECK(warm.objective() >= first - 1e-7);
    }
  }
}

TEST_CASE("degenerate rows do not stall") {
  // Several redundant copies of the same face.
  LpProblem p = make_problem(6, 3);
  for (int r = 0; r < 6; ++r) {
    for (int v = 0; v < 3; ++v) p.cols[v].entries.emplace_back(r, 1.0);
    p.relation[r] = 0;
    p.rhs[r] = 6.0;
  }
  p.cost = {-1.0, -1.0, -1.0};
  for (int v = 0; v < 3; ++v) p.upper[v] = 4.0;
  SimplexSolver s(p);
  CHECK(s.solve() == LpStatus::optimal);
  CHECK(s.objective() == doctest::Approx(-6.0));
}
