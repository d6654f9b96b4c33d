#include "providers.hpp"

#include <cmath>

namespace impdiff {

namespace {

std::vector<int> key_of(std::span<const int> idx) { return {idx.begin(), idx.end()}; }

void check_indices(std::span<const int> idx, size_t limit, const char* which) {
  if (idx.empty()) fail(ErrorCode::InvalidArgument, "index subsets must be non-empty");
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || static_cast<size_t>(idx[i]) >= limit)
      fail(ErrorCode::IndexOutOfRange, std::string(which) + " index out of range");
    if (i > 0 && idx[i] <= idx[i - 1])
      fail(ErrorCode::InvalidArgument, std::string(which) + " index subset must be increasing");
  }
}

}  // namespace

GridProvider::GridProvider(ExprPtr g, const KnotConfiguration& cfg)
    : mode_(cfg.mode),
      table_(cfg.x, cfg.y, [g, x = cfg.x, y = cfg.y, mode = cfg.mode](int i, int j) {
        return eval(*g, x[i], y[j], mode);
      }) {
  if (cfg.confluent())
    fail(ErrorCode::InvalidArgument, "grid provider needs distinct knots");
  if (mode_ == Mode::Float) {
    for (size_t i = 0; i < cfg.x.size(); ++i)
      for (size_t j = 0; j < cfg.y.size(); ++j)
        scale_ = std::max(scale_, std::fabs(eval(*g, cfg.x[i], cfg.y[j], mode_).to_double()));
  }
}

Scalar GridProvider::request(std::span<const int> xi, std::span<const int> yj) {
  return table_.request(xi, yj);
}

ConfluentProvider::ConfluentProvider(ExprPtr g, Scalar x0, Scalar y0, Mode mode)
    : g_(std::move(g)), x0_(x0.to_mode(mode)), y0_(y0.to_mode(mode)), mode_(mode) {}

const ExprPtr& ConfluentProvider::partial_expr(int s, int t) {
  auto it = partials_.find({s, t});
  if (it != partials_.end()) return it->second;
  ExprPtr e;
  if (s == 0 && t == 0) {
    e = g_;
  } else if (t > 0) {
    e = diff(partial_expr(s, t - 1), Var::Y);
  } else {
    e = diff(partial_expr(s - 1, 0), Var::X);
  }
  return partials_.emplace(std::make_pair(s, t), std::move(e)).first->second;
}

Scalar ConfluentProvider::partial(int s, int t) {
  return eval(*partial_expr(s, t), x0_, y0_, mode_);
}

Scalar ConfluentProvider::request(std::span<const int> xi, std::span<const int> yj) {
  if (xi.empty() || yj.empty())
    fail(ErrorCode::InvalidArgument, "index subsets must be non-empty");
  int s = static_cast<int>(xi.size()) - 1;
  int t = static_cast<int>(yj.size()) - 1;
  return bivariate_dd_confluent(x0_, y0_, s, t, partial(s, t));
}

Scalar CircleProvider::request(std::span<const int> xi, std::span<const int> yj) {
  check_indices(xi, cfg_.x.size(), "x");
  check_indices(yj, cfg_.y.size(), "y");
  int s = static_cast<int>(xi.size()) - 1;
  int t = static_cast<int>(yj.size()) - 1;
  Mode m = cfg_.mode;
  if (s == 0 && t == 0) {
    const Scalar& xa = cfg_.x[xi[0]];
    const Scalar& yb = cfg_.y[yj[0]];
    return xa * xa + yb * yb - Scalar::one(m);
  }
  if (s == 1 && t == 0) return cfg_.x[xi[0]] + cfg_.x[xi[1]];
  if (s == 0 && t == 1) return cfg_.y[yj[0]] + cfg_.y[yj[1]];
  if ((s == 2 && t == 0) || (s == 0 && t == 2)) return Scalar::one(m);
  return Scalar::zero(m);
}

ExprHSource::ExprHSource(ExprPtr h, std::vector<Scalar> y_knots, Mode mode)
    : y_(std::move(y_knots)), mode_(mode) {
  for (const Scalar& yk : y_) values_.push_back(eval(*h, yk, yk, mode_));
}

namespace {

Scalar subset_dd(const std::vector<Scalar>& knots, const std::vector<Scalar>& values,
                 std::span<const int> indices, std::map<std::vector<int>, Scalar>& cache,
                 const char* which) {
  check_indices(indices, knots.size(), which);
  auto key = key_of(indices);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Scalar> k, v;
  for (int i : indices) {
    k.push_back(knots[i]);
    v.push_back(values[i]);
  }
  Scalar r = univariate_dd(k, v);
  return cache.emplace(std::move(key), std::move(r)).first->second;
}

}  // namespace

Scalar ExprHSource::dd(std::span<const int> indices) {
  return subset_dd(y_, values_, indices, cache_, "y");
}

SampledHSource::SampledHSource(std::vector<Scalar> y_knots, std::vector<Scalar> values)
    : y_(std::move(y_knots)), values_(std::move(values)) {
  if (y_.size() != values_.size())
    fail(ErrorCode::LengthMismatch, "knots and samples differ in length");
  if (y_.empty()) fail(ErrorCode::InvalidArgument, "at least one sample required");
  mode_ = y_[0].mode();
}

Scalar SampledHSource::dd(std::span<const int> indices) {
  return subset_dd(y_, values_, indices, cache_, "y");
}

Scalar InverseProvider::request(std::span<const int> xi, std::span<const int> yj) {
  check_indices(xi, cfg_.x.size(), "x");
  check_indices(yj, cfg_.y.size(), "y");
  int s = static_cast<int>(xi.size()) - 1;
  int t = static_cast<int>(yj.size()) - 1;
  Mode m = cfg_.mode;
  if (s == 0 && t == 0) return cfg_.x[xi[0]] - h_.dd(yj);
  if (s == 0) return -h_.dd(yj);
  if (t == 0 && s == 1) return Scalar::one(m);
  return Scalar::zero(m);
}

QuotientProvider::QuotientProvider(std::vector<Scalar> p_values, std::vector<Scalar> q_values,
                                   const KnotConfiguration& cfg)
    : p_(std::move(p_values)), q_(std::move(q_values)), cfg_(cfg) {
  if (p_.size() != cfg_.x.size() || q_.size() != cfg_.x.size())
    fail(ErrorCode::LengthMismatch, "sample lists must match the knot count");
}

Scalar QuotientProvider::sample_dd(const std::vector<Scalar>& values, std::span<const int> xi,
                                   std::map<std::vector<int>, Scalar>& cache) {
  return subset_dd(cfg_.x, values, xi, cache, "x");
}

Scalar QuotientProvider::request(std::span<const int> xi, std::span<const int> yj) {
  check_indices(xi, cfg_.x.size(), "x");
  check_indices(yj, cfg_.y.size(), "y");
  int t = static_cast<int>(yj.size()) - 1;
  if (t == 0) return cfg_.y[yj[0]] * sample_dd(q_, xi, q_cache_) - sample_dd(p_, xi, p_cache_);
  if (t == 1) return sample_dd(q_, xi, q_cache_);
  return Scalar::zero(cfg_.mode);
}

}  // namespace impdiff
