#include "coolsched/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace coolsched {

namespace {

constexpr double kPivotTol = 1e-9;

struct UnboundedRay {};

struct Tableau {
  // rows: one per constraint, plus the objective row last
  // cols: structural + surplus + slack + artificial + rhs
  std::vector<std::vector<double>> t;
  std::vector<int> basis;  // basic column per constraint row
  int rows = 0, cols = 0;

  double& at(int r, int c) { return t[r][c]; }

  void pivot(int pr, int pc) {
    const double p = t[pr][pc];
    for (int c = 0; c < cols; ++c) t[pr][c] /= p;
    for (int r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      const double f = t[r][pc];
      if (f == 0.0) continue;
      for (int c = 0; c < cols; ++c) t[r][c] -= f * t[pr][c];
    }
    basis[pr] = pc;
  }

  // Bland: entering = lowest-index column with reduced cost < -tol;
  // leaving = min-ratio row, ties by lowest basis column. Returns false at
  // optimality; throws on an unbounded ray.
  bool step(int usable_cols) {
    int pc = -1;
    for (int c = 0; c < usable_cols; ++c) {
      if (t[rows][c] < -kPivotTol) {
        pc = c;
        break;
      }
    }
    if (pc < 0) return false;
    int pr = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      if (t[r][pc] <= kPivotTol) continue;
      double ratio = t[r][cols - 1] / t[r][pc];
      if (ratio < best - kPivotTol ||
          (ratio < best + kPivotTol && (pr < 0 || basis[r] < basis[pr]))) {
        best = ratio;
        pr = r;
      }
    }
    if (pr < 0) throw UnboundedRay{};
    pivot(pr, pc);
    return true;
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  const int n = static_cast<int>(problem.c.size());
  const int n_ge = static_cast<int>(problem.a.size());
  int n_ub = 0;
  for (double u : problem.upper)
    if (u != std::numeric_limits<double>::infinity()) ++n_ub;

  const int rows = n_ge + n_ub;
  const int col_surplus = n;
  const int col_slack = col_surplus + n_ge;
  const int col_art = col_slack + n_ub;
  const int col_rhs = col_art + n_ge;
  const int cols = col_rhs + 1;

  Tableau tab;
  tab.rows = rows;
  tab.cols = cols;
  tab.t.assign(rows + 1, std::vector<double>(cols, 0.0));
  tab.basis.assign(rows, -1);

  for (int r = 0; r < n_ge; ++r) {
    for (int j = 0; j < n; ++j) tab.at(r, j) = problem.a[r][j];
    tab.at(r, col_surplus + r) = -1.0;
    tab.at(r, col_art + r) = 1.0;
    tab.at(r, col_rhs) = problem.b[r];
    if (problem.b[r] < 0.0) throw std::runtime_error("covering rhs must be nonnegative");
    tab.basis[r] = col_art + r;
  }
  int ub_row = n_ge;
  for (int j = 0; j < n; ++j) {
    if (problem.upper[j] == std::numeric_limits<double>::infinity()) continue;
    tab.at(ub_row, j) = 1.0;
    tab.at(ub_row, col_slack + (ub_row - n_ge)) = 1.0;
    tab.at(ub_row, col_rhs) = problem.upper[j];
    tab.basis[ub_row] = col_slack + (ub_row - n_ge);
    ++ub_row;
  }

  const long long iteration_cap = 1000LL * (rows + cols) + 100000;
  long long iterations = 0;
  auto run_phase = [&]() {
    while (tab.step(col_art))
      if (++iterations > iteration_cap)
        throw std::runtime_error("simplex exceeded its iteration cap");
  };

  // phase 1: minimize the artificial sum (bounded below by zero)
  for (int r = 0; r < n_ge; ++r)
    for (int c = 0; c < cols; ++c) tab.at(rows, c) -= tab.t[r][c];
  for (int r = 0; r < n_ge; ++r) tab.at(rows, col_art + r) = 0.0;
  try {
    run_phase();
  } catch (const UnboundedRay&) {
    throw std::runtime_error("phase-1 objective reported unbounded: numeric failure");
  }
  LpSolution sol;
  if (tab.at(rows, col_rhs) < -1e-7) {
    sol.status = LpSolution::Status::kInfeasible;
    return sol;
  }
  // drive leftover artificials out of the basis (degenerate rows)
  for (int r = 0; r < rows; ++r) {
    if (tab.basis[r] < col_art) continue;
    int pc = -1;
    for (int c = 0; c < col_art; ++c)
      if (std::fabs(tab.t[r][c]) > kPivotTol) {
        pc = c;
        break;
      }
    if (pc >= 0) tab.pivot(r, pc);
    // an all-zero row is redundant; its artificial stays basic at zero
  }

  // phase 2: the real objective
  for (int c = 0; c < cols; ++c) tab.at(rows, c) = 0.0;
  for (int j = 0; j < n; ++j) tab.at(rows, j) = problem.c[j];
  for (int r = 0; r < rows; ++r) {
    int bc = tab.basis[r];
    double f = tab.at(rows, bc);
    if (f == 0.0) continue;
    for (int c = 0; c < cols; ++c) tab.at(rows, c) -= f * tab.t[r][c];
  }
  try {
    run_phase();
  } catch (const UnboundedRay&) {
    sol.status = LpSolution::Status::kUnbounded;
    return sol;
  }

  sol.status = LpSolution::Status::kOptimal;
  sol.x.assign(n, 0.0);
  for (int r = 0; r < rows; ++r)
    if (tab.basis[r] < n) sol.x[tab.basis[r]] = tab.t[r][col_rhs];
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += problem.c[j] * sol.x[j];
  return sol;
}

}  // namespace coolsched
