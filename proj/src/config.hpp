#pragma once

#include <vector>

#include "expr.hpp"
#include "scalar.hpp"

namespace impdiff {

// Knots x_0 < ... < x_n together with the matched solution values
// y_i = y(x_i) of g(x, y) = 0. In confluent mode all knots coincide.
struct KnotConfiguration {
  Mode mode = Mode::Rational;
  std::vector<Scalar> x;
  std::vector<Scalar> y;
  std::vector<Scalar> residuals;  // g(x_i, y_i), recorded at construction

  int order() const { return static_cast<int>(x.size()) - 1; }
  bool confluent() const;
};

// Validates shape, knot ordering, pairwise-distinct y values (distinct mode)
// and the residual bound |g(x_i, y_i)| <= residual_tol (exact zero required
// in rational mode). Throws Error on violation.
KnotConfiguration make_knot_configuration(const ExprPtr& g, std::vector<Scalar> x,
                                          std::vector<Scalar> y, Mode mode,
                                          double residual_tol = 1e-10);

}  // namespace impdiff
