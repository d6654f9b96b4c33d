#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "config.hpp"
#include "divdiff.hpp"
#include "expr.hpp"

namespace impdiff {

// Source of bivariate divided differences [x_{i0}..x_{is}; y_{j0}..y_{jt}]g
// over index subsets of a knot configuration. Implementations cache their
// results; repeated requests are cheap.
class BivariateDDProvider {
 public:
  virtual ~BivariateDDProvider() = default;

  virtual Scalar request(std::span<const int> xi, std::span<const int> yj) = 0;
  virtual Mode mode() const = 0;

  // Magnitude hint used by near-singular pivot thresholds (float mode).
  virtual double scale() const { return 1.0; }
};

// Recursion over the value grid g(x_i, y_j) evaluated from an expression.
class GridProvider : public BivariateDDProvider {
 public:
  GridProvider(ExprPtr g, const KnotConfiguration& cfg);

  Scalar request(std::span<const int> xi, std::span<const int> yj) override;
  Mode mode() const override { return mode_; }
  double scale() const override { return scale_; }

  // Exposes the branch choice for cross-checking tests.
  Scalar request_branch(std::span<const int> xi, std::span<const int> yj, RecursionBranch b) {
    return table_.request(xi, yj, b);
  }

 private:
  Mode mode_;
  double scale_ = 1.0;
  BivariateTable table_;
};

// All knots coincide at (x0, y0): requests become partial derivatives
// g_{st}/(s! t!), with g_{st} obtained by formal differentiation.
class ConfluentProvider : public BivariateDDProvider {
 public:
  ConfluentProvider(ExprPtr g, Scalar x0, Scalar y0, Mode mode);

  Scalar request(std::span<const int> xi, std::span<const int> yj) override;
  Mode mode() const override { return mode_; }

  // g_{st} itself (not divided by factorials).
  Scalar partial(int s, int t);

 private:
  const ExprPtr& partial_expr(int s, int t);

  ExprPtr g_;
  Scalar x0_, y0_;
  Mode mode_;
  std::map<std::pair<int, int>, ExprPtr> partials_;
};

// Closed form for g(x,y) = x^2 + y^2 - 1: first-order differences are knot
// sums, second-order ones are 1, and every difference of total order >= 3 or
// of mixed order vanishes.
class CircleProvider : public BivariateDDProvider {
 public:
  explicit CircleProvider(const KnotConfiguration& cfg) : cfg_(cfg) {}

  Scalar request(std::span<const int> xi, std::span<const int> yj) override;
  Mode mode() const override { return cfg_.mode; }

 private:
  const KnotConfiguration& cfg_;
};

// Univariate divided differences [y_{v0},...,y_{vr}]h over index subsets,
// backed either by an expression h(y) or by sampled values.
class UnivariateDDSource {
 public:
  virtual ~UnivariateDDSource() = default;
  virtual Scalar dd(std::span<const int> indices) = 0;
  virtual Mode mode() const = 0;
};

class ExprHSource : public UnivariateDDSource {
 public:
  ExprHSource(ExprPtr h, std::vector<Scalar> y_knots, Mode mode);
  Scalar dd(std::span<const int> indices) override;
  Mode mode() const override { return mode_; }

 private:
  std::vector<Scalar> y_, values_;
  Mode mode_;
  std::map<std::vector<int>, Scalar> cache_;
};

class SampledHSource : public UnivariateDDSource {
 public:
  SampledHSource(std::vector<Scalar> y_knots, std::vector<Scalar> values);
  Scalar dd(std::span<const int> indices) override;
  Mode mode() const override { return mode_; }

 private:
  std::vector<Scalar> y_, values_;
  Mode mode_;
  std::map<std::vector<int>, Scalar> cache_;
};

// Closed form for g(x,y) = x - h(y).
class InverseProvider : public BivariateDDProvider {
 public:
  InverseProvider(UnivariateDDSource& h, const KnotConfiguration& cfg) : h_(h), cfg_(cfg) {}

  Scalar request(std::span<const int> xi, std::span<const int> yj) override;
  Mode mode() const override { return cfg_.mode; }

 private:
  UnivariateDDSource& h_;
  const KnotConfiguration& cfg_;
};

// Closed form for g(x,y) = Q(x) y - P(x), from samples P_i, Q_i at the knots.
class QuotientProvider : public BivariateDDProvider {
 public:
  QuotientProvider(std::vector<Scalar> p_values, std::vector<Scalar> q_values,
                   const KnotConfiguration& cfg);

  Scalar request(std::span<const int> xi, std::span<const int> yj) override;
  Mode mode() const override { return cfg_.mode; }

 private:
  Scalar sample_dd(const std::vector<Scalar>& values, std::span<const int> xi,
                   std::map<std::vector<int>, Scalar>& cache);

  std::vector<Scalar> p_, q_;
  const KnotConfiguration& cfg_;
  std::map<std::vector<int>, Scalar> p_cache_, q_cache_;
};

}  // namespace impdiff
