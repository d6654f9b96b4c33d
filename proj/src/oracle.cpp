#include "oracle.hpp"

#include <cmath>

#include "divdiff.hpp"

namespace impdiff {

namespace {

double eval_g(const Expr& g, double x, double y) {
  return eval(g, Scalar::real(x), Scalar::real(y), Mode::Float).to_double();
}

double bisect(const Expr& g, double x, std::pair<double, double> bracket, double tol,
              int knot_index) {
  double lo = bracket.first, hi = bracket.second;
  double flo = eval_g(g, x, lo);
  double fhi = eval_g(g, x, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    fail(ErrorCode::DerivativeVanished,
         "dg/dy vanished at knot " + std::to_string(knot_index) +
             " and the bisection bracket has no sign change");
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double fmid = eval_g(g, x, mid);
    if (std::fabs(fmid) <= tol) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  fail(ErrorCode::NoConvergence,
       "bisection did not reach tolerance at knot " + std::to_string(knot_index));
}

}  // namespace

BranchSolution solve_branch(const ExprPtr& g, std::span<const double> x_knots,
                            const BranchSeed& seed) {
  if (x_knots.empty()) fail(ErrorCode::InvalidArgument, "at least one knot required");
  if (seed.seeds.size() != 1 && seed.seeds.size() != x_knots.size())
    fail(ErrorCode::LengthMismatch, "seed list must have one entry or one per knot");
  if (seed.residual_tol <= 0.0) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (seed.max_iterations < 1) fail(ErrorCode::InvalidArgument, "need at least one iteration");

  ExprPtr gy = diff(g, Var::Y);
  BranchSolution out;
  out.y.reserve(x_knots.size());
  out.iterations.reserve(x_knots.size());

  for (size_t i = 0; i < x_knots.size(); ++i) {
    double x = x_knots[i];
    double y = seed.seeds.size() == 1 ? (i == 0 ? seed.seeds[0] : out.y[i - 1]) : seed.seeds[i];

    double residual = eval_g(*g, x, y);
    int iterations = 0;
    bool converged = std::fabs(residual) <= seed.residual_tol;
    while (!converged && iterations < seed.max_iterations) {
      double slope = eval_g(*gy, x, y);
      if (!std::isfinite(slope) || std::fabs(slope) < 1e-14 * std::max(1.0, std::fabs(y))) {
        if (seed.bisection_bracket) {
          y = bisect(*g, x, *seed.bisection_bracket, seed.residual_tol, static_cast<int>(i));
          residual = eval_g(*g, x, y);
          converged = std::fabs(residual) <= seed.residual_tol;
          break;
        }
        fail(ErrorCode::DerivativeVanished,
             "dg/dy vanished at knot " + std::to_string(i) + " (y = " + format_double(y) + ")");
      }
      double step = residual / slope;
      double trial = y - step;
      double trial_residual = eval_g(*g, x, trial);
      // Halve the step while the residual gets worse.
      for (int halvings = 0;
           halvings < 20 && std::fabs(trial_residual) > std::fabs(residual); ++halvings) {
        step *= 0.5;
        trial = y - step;
        trial_residual = eval_g(*g, x, trial);
      }
      y = trial;
      residual = trial_residual;
      ++iterations;
      converged = std::fabs(residual) <= seed.residual_tol;
    }
    if (!converged)
      fail(ErrorCode::NoConvergence, "no convergence at knot " + std::to_string(i) +
                                         ", last residual " + format_double(residual));
    if (seed.jump_guard > 0.0 && i > 0 && std::fabs(y - out.y[i - 1]) > seed.jump_guard)
      fail(ErrorCode::BranchJump, "solution jump |y_" + std::to_string(i) + " - y_" +
                                      std::to_string(i - 1) + "| = " +
                                      format_double(std::fabs(y - out.y[i - 1])) +
                                      " exceeds the jump guard");
    out.y.push_back(y);
    out.iterations.push_back(iterations);
  }
  return out;
}

double direct_dd_y(std::span<const double> x_knots, std::span<const double> y_values) {
  std::vector<Scalar> k, v;
  for (double x : x_knots) k.push_back(Scalar::real(x));
  for (double y : y_values) v.push_back(Scalar::real(y));
  return univariate_dd(k, v).to_double();
}

}  // namespace impdiff
