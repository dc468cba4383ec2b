#ifndef COOLSCHED_SIMPLEX_HPP
#define COOLSCHED_SIMPLEX_HPP

#include <vector>

namespace coolsched {

/// minimize c^T x  subject to  A x >= b,  0 <= x <= upper.
/// upper entries may be +inf for unbounded variables.
struct LpProblem {
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> upper;
};

struct LpSolution {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
};

/// Dense two-phase tableau simplex with Bland's rule; pivot tolerance 1e-9.
/// Desk-scale instances only (hundreds of rows/columns).
LpSolution solve_lp(const LpProblem& problem);

}  // namespace coolsched

#endif
