#include "divdiff.hpp"

#include <algorithm>

namespace impdiff {

namespace {

bool all_equal(std::span<const Scalar> v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] != v[0]) return false;
  return true;
}

bool any_equal_pair(std::span<const Scalar> v) {
  // Inputs are tiny (desk-scale orders), quadratic scan is fine.
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) return true;
  return false;
}

}  // namespace

void UnivariateSamples::validate() const {
  if (knots.empty()) fail(ErrorCode::InvalidArgument, "at least one knot required");
  if (knots.size() != values.size())
    fail(ErrorCode::LengthMismatch, "knot and value lists differ in length");
  for (size_t i = 1; i < knots.size(); ++i)
    if ((knots[i] - knots[i - 1]).is_negative())
      fail(ErrorCode::InvalidArgument, "knots must be non-decreasing");
  if (knots.size() > 1 && any_equal_pair(knots) && !all_equal(knots))
    fail(ErrorCode::PartialConfluency,
         "some but not all knots coincide; only fully distinct or fully "
         "coalesced knots are supported");
}

Scalar univariate_dd(std::span<const Scalar> knots, std::span<const Scalar> values) {
  if (knots.empty()) fail(ErrorCode::InvalidArgument, "at least one knot required");
  if (knots.size() != values.size())
    fail(ErrorCode::LengthMismatch, "knot and value lists differ in length");
  std::vector<Scalar> table(values.begin(), values.end());
  size_t n = knots.size();
  for (size_t level = 1; level < n; ++level) {
    for (size_t i = n - 1; i >= level; --i) {
      Scalar denom = knots[i] - knots[i - level];
      if (denom.is_zero())
        fail(ErrorCode::InvalidArgument, "coincident knots in distinct-knot divided difference");
      table[i] = (table[i] - table[i - 1]) / denom;
    }
  }
  return table[n - 1];
}

Scalar univariate_dd(const UnivariateSamples& samples) {
  samples.validate();
  if (samples.knots.size() > 1 && all_equal(samples.knots))
    fail(ErrorCode::InvalidArgument,
         "all knots coincide; supply the n-th derivative via the confluent form");
  return univariate_dd(samples.knots, samples.values);
}

Scalar univariate_dd_confluent(const Scalar& x0, int order, const Scalar& deriv_n) {
  (void)x0;
  if (order < 0) fail(ErrorCode::InvalidArgument, "negative order");
  return deriv_n / factorial_scalar(order, deriv_n.mode());
}

void BivariateGrid::validate() const {
  if (x_knots.empty() || y_knots.empty())
    fail(ErrorCode::InvalidArgument, "grid needs at least one knot per axis");
  if (values.size() != x_knots.size())
    fail(ErrorCode::LengthMismatch, "value table rows must match x knots");
  for (const auto& row : values)
    if (row.size() != y_knots.size())
      fail(ErrorCode::LengthMismatch, "value table columns must match y knots");
  for (size_t i = 1; i < x_knots.size(); ++i) {
    Scalar d = x_knots[i] - x_knots[i - 1];
    if (d.is_negative() || d.is_zero())
      fail(ErrorCode::InvalidArgument, "x knots must be strictly increasing");
  }
  for (size_t j = 1; j < y_knots.size(); ++j) {
    Scalar d = y_knots[j] - y_knots[j - 1];
    if (d.is_negative() || d.is_zero())
      fail(ErrorCode::InvalidArgument, "y knots must be strictly increasing");
  }
}

BivariateTable::BivariateTable(std::vector<Scalar> x_knots, std::vector<Scalar> y_knots,
                               std::function<Scalar(int, int)> value_at)
    : x_(std::move(x_knots)), y_(std::move(y_knots)), value_at_(std::move(value_at)) {
  if (x_.empty() || y_.empty())
    fail(ErrorCode::InvalidArgument, "grid needs at least one knot per axis");
}

Scalar BivariateTable::request(std::span<const int> xi, std::span<const int> yj,
                               RecursionBranch branch) {
  if (xi.empty() || yj.empty())
    fail(ErrorCode::InvalidArgument, "index subsets must be non-empty");
  for (size_t i = 0; i < xi.size(); ++i) {
    if (xi[i] < 0 || static_cast<size_t>(xi[i]) >= x_.size())
      fail(ErrorCode::IndexOutOfRange, "x index out of range");
    if (i > 0 && xi[i] <= xi[i - 1])
      fail(ErrorCode::InvalidArgument, "x index subset must be strictly increasing");
  }
  for (size_t j = 0; j < yj.size(); ++j) {
    if (yj[j] < 0 || static_cast<size_t>(yj[j]) >= y_.size())
      fail(ErrorCode::IndexOutOfRange, "y index out of range");
    if (j > 0 && yj[j] <= yj[j - 1])
      fail(ErrorCode::InvalidArgument, "y index subset must be strictly increasing");
  }
  return compute(std::vector<int>(xi.begin(), xi.end()), std::vector<int>(yj.begin(), yj.end()),
                 branch);
}

Scalar BivariateTable::compute(std::vector<int> xi, std::vector<int> yj, RecursionBranch branch) {
  // Key: x indices, -1 separator, y indices. Both branches give the same
  // value, so cache entries are shared between them.
  std::vector<int> key;
  key.reserve(xi.size() + yj.size() + 1);
  key.insert(key.end(), xi.begin(), xi.end());
  key.push_back(-1);
  key.insert(key.end(), yj.begin(), yj.end());
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }

  Scalar result;
  if (xi.size() == 1 && yj.size() == 1) {
    result = value_at_(xi[0], yj[0]);
  } else {
    bool use_x = xi.size() > 1 && (branch == RecursionBranch::XFirst || yj.size() == 1);
    if (use_x) {
      std::vector<int> tail(xi.begin() + 1, xi.end());
      std::vector<int> head(xi.begin(), xi.end() - 1);
      Scalar denom = x_[xi.back()] - x_[xi.front()];
      Scalar hi = compute(std::move(tail), yj, branch);
      Scalar lo = compute(std::move(head), std::move(yj), branch);
      result = (hi - lo) / denom;
    } else {
      std::vector<int> tail(yj.begin() + 1, yj.end());
      std::vector<int> head(yj.begin(), yj.end() - 1);
      Scalar denom = y_[yj.back()] - y_[yj.front()];
      Scalar hi = compute(xi, std::move(tail), branch);
      Scalar lo = compute(std::move(xi), std::move(head), branch);
      result = (hi - lo) / denom;
    }
  }

  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = cache_.emplace(std::move(key), result);
  return it->second;
}

Scalar bivariate_dd(const BivariateGrid& grid, std::span<const int> xi, std::span<const int> yj,
                    RecursionBranch branch) {
  grid.validate();
  BivariateTable table(grid.x_knots, grid.y_knots,
                       [&grid](int i, int j) { return grid.values[i][j]; });
  return table.request(xi, yj, branch);
}

Scalar bivariate_dd_confluent(const Scalar& x0, const Scalar& y0, int m, int n,
                              const Scalar& partial_mn) {
  (void)x0;
  (void)y0;
  if (m < 0 || n < 0) fail(ErrorCode::InvalidArgument, "negative order");
  Mode mode = partial_mn.mode();
  return partial_mn / (factorial_scalar(m, mode) * factorial_scalar(n, mode));
}

}  // namespace impdiff
