#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "expr.hpp"

namespace impdiff {

// Seeding and stopping controls for branch following. Either one seed that
// propagates knot to knot (continuation) or one seed per knot.
struct BranchSeed {
  std::vector<double> seeds;  // size 1 or one per knot
  double residual_tol = 1e-13;
  int max_iterations = 50;
  double jump_guard = 0.0;  // max |y_{i+1} - y_i|; <= 0 disables the check
  std::optional<std::pair<double, double>> bisection_bracket;
};

struct BranchSolution {
  std::vector<double> y;
  std::vector<int> iterations;  // Newton steps spent per knot
};

// Solves g(x_i, y) = 0 at every knot by damped Newton iteration, seeding each
// solve with the previous knot's solution. Falls back to bisection inside the
// supplied bracket when dg/dy vanishes along the way.
BranchSolution solve_branch(const ExprPtr& g, std::span<const double> x_knots,
                            const BranchSeed& seed);

// Ground-truth divided difference of the solved branch values.
double direct_dd_y(std::span<const double> x_knots, std::span<const double> y_values);

}  // namespace impdiff
