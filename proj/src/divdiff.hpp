#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "scalar.hpp"

namespace impdiff {

// Knot/value table for a univariate divided difference. Knots must be
// non-decreasing; equal knots are only allowed when all of them coincide
// (fully confluent case), in which case the confluent form below applies.
struct UnivariateSamples {
  std::vector<Scalar> knots;
  std::vector<Scalar> values;

  void validate() const;
};

// Divided difference over pairwise-distinct knots in any order (the value is
// symmetric in the (knot, value) pairs). Order 0 returns values[0].
Scalar univariate_dd(std::span<const Scalar> knots, std::span<const Scalar> values);

Scalar univariate_dd(const UnivariateSamples& samples);

// All-knots-equal limit: f^(n)(x0) / n!.
Scalar univariate_dd_confluent(const Scalar& x0, int order, const Scalar& deriv_n);

// Rectangular value grid: values[i][j] = g(x_knots[i], y_knots[j]).
struct BivariateGrid {
  std::vector<Scalar> x_knots;
  std::vector<Scalar> y_knots;
  std::vector<std::vector<Scalar>> values;

  void validate() const;
};

enum class RecursionBranch { XFirst, YFirst };

// Cached bivariate divided differences over index subsets of a grid whose
// point values come from a callback. Requests are memoized per table; the
// cache is guarded so concurrent lookups stay consistent.
class BivariateTable {
 public:
  BivariateTable(std::vector<Scalar> x_knots, std::vector<Scalar> y_knots,
                 std::function<Scalar(int, int)> value_at);

  // [x_{i0},...,x_{is}; y_{j0},...,y_{jt}]g for strictly increasing index
  // subsets; either recursion branch gives the same value.
  Scalar request(std::span<const int> xi, std::span<const int> yj,
                 RecursionBranch branch = RecursionBranch::XFirst);

  size_t x_size() const { return x_.size(); }
  size_t y_size() const { return y_.size(); }

 private:
  Scalar compute(std::vector<int> xi, std::vector<int> yj, RecursionBranch branch);

  std::vector<Scalar> x_, y_;
  std::function<Scalar(int, int)> value_at_;
  std::map<std::vector<int>, Scalar> cache_;
  std::mutex mutex_;
};

Scalar bivariate_dd(const BivariateGrid& grid, std::span<const int> xi, std::span<const int> yj,
                    RecursionBranch branch = RecursionBranch::XFirst);

// Fully confluent bivariate limit: (d^{m+n} g / dx^m dy^n)(x0, y0) / (m! n!).
Scalar bivariate_dd_confluent(const Scalar& x0, const Scalar& y0, int m, int n,
                              const Scalar& partial_mn);

}  // namespace impdiff
