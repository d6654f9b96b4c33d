#pragma once

#include <span>

#include "config.hpp"
#include "engine.hpp"
#include "partitions.hpp"
#include "providers.hpp"

namespace impdiff {

// Which vertices of a triangle face (a, b, c) are consecutive integers;
// this alone selects the closed-form face weight for the circle.
enum class CurlyCase { AllConsecutive, ABConsecutive, BCConsecutive, NoneConsecutive };

CurlyCase classify_triangle(const Face& face);

// Closed-form face weight for g(x,y) = x^2 + y^2 - 1 on a triangle face,
// upper branch (y_i > 0). Must agree with ImplicitEngine::curly on the same
// configuration.
Scalar circle_curly(const Face& face, const KnotConfiguration& cfg);

// [0..n]y for the circle: only triangulations contribute, since every
// divided difference of g of total order >= 3 vanishes.
EngineResult circle_implicit_dd(const KnotConfiguration& cfg);

// Divided difference of the inverse function y = h^{-1}(x): signed sum over
// polygon partitions of face differences of h over edge differences of h.
Scalar inverse_dd(UnivariateDDSource& h, const KnotConfiguration& cfg);

// Quotient rule: [0..n](P/Q) from consecutive-window divided differences of
// P and Q and the point values Q_i. Throws ZeroDenominator naming the knot
// when some Q_i = 0.
Scalar quotient_dd(std::span<const Scalar> p_values, std::span<const Scalar> q_values,
                   std::span<const Scalar> x_knots);

// For g = Q(x) y - P(x), a partition contributes to the partition formula
// only if every inner edge ends at the last vertex n.
bool quotient_partition_contributes(const Partition& p);

// Derivatives y', y'' or y''' of the implicitly defined y at a point with
// g(x0, y0) = 0, from the partial derivatives g_st. Order must be 1..3.
Scalar confluent_derivative(const ExprPtr& g, const Scalar& x0, const Scalar& y0, int order,
                            Mode mode, double residual_tol = 1e-10);

}  // namespace impdiff
