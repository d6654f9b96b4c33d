#include "engine.hpp"

#include <cmath>

#include "partitions.hpp"

namespace impdiff {

void Accumulator::add(const Scalar& s) {
  if (mode_ == Mode::Rational) {
    rational_sum_ += s.rat();
    return;
  }
  double y = s.to_double() - compensation_;
  double t = float_sum_ + y;
  compensation_ = (t - float_sum_) - y;
  float_sum_ = t;
}

Scalar Accumulator::total() const {
  return mode_ == Mode::Rational ? Scalar::rational(rational_sum_) : Scalar::real(float_sum_);
}

ImplicitEngine::ImplicitEngine(BivariateDDProvider& provider, int order, double pivot_rel)
    : p_(provider), n_(order), pivot_rel_(pivot_rel) {
  if (order < 1) fail(ErrorCode::InvalidArgument, "order must be at least 1");
}

Scalar ImplicitEngine::pivot(int i, int k) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = pivot_cache_.find({i, k});
    if (it != pivot_cache_.end()) return it->second;
  }
  int xs[1] = {i};
  int ys[2] = {i, k};
  Scalar v = p_.request(xs, ys);
  bool singular = p_.mode() == Mode::Rational
                      ? v.is_zero()
                      : std::fabs(v.to_double()) < pivot_rel_ * p_.scale();
  if (singular)
    fail(ErrorCode::SingularPivot, "pivot [x_" + std::to_string(i) + "; y_" + std::to_string(i) +
                                       ", y_" + std::to_string(k) +
                                       "]g vanishes (dg/dy hypothesis violated)");
  std::lock_guard<std::mutex> lock(mutex_);
  return pivot_cache_.emplace(std::make_pair(i, k), std::move(v)).first->second;
}

Scalar ImplicitEngine::first_order(int i, int j) {
  if (i >= j) fail(ErrorCode::InvalidArgument, "first-order pair must satisfy i < j");
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = first_order_cache_.find({i, j});
    if (it != first_order_cache_.end()) return it->second;
  }
  int xs[2] = {i, j};
  int ys[1] = {j};
  Scalar v = -p_.request(xs, ys) / pivot(i, j);
  std::lock_guard<std::mutex> lock(mutex_);
  return first_order_cache_.emplace(std::make_pair(i, j), std::move(v)).first->second;
}

Scalar ImplicitEngine::curly(std::span<const int> seq, int* term_count) {
  if (seq.size() < 2) fail(ErrorCode::InvalidArgument, "sequence needs k >= 1");
  for (size_t i = 1; i < seq.size(); ++i)
    if (seq[i] <= seq[i - 1])
      fail(ErrorCode::InvalidArgument, "sequence must be strictly increasing");

  std::vector<int> key(seq.begin(), seq.end());
  if (term_count == nullptr) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = curly_cache_.find(key);
    if (it != curly_cache_.end()) return it->second;
  }

  int k = static_cast<int>(seq.size()) - 1;
  Scalar denom = pivot(seq[0], seq[k]);
  Accumulator sum(p_.mode());
  int terms = 0;
  for (int s = 0; s <= k && seq[s] == seq[0] + s; ++s) {
    std::vector<int> xs(seq.begin(), seq.begin() + s + 1);
    std::vector<int> ys(seq.begin() + s, seq.end());
    Scalar term = p_.request(xs, ys) / denom;
    for (int l = s + 1; l <= k; ++l)
      if (seq[l] - seq[l - 1] == 1) term *= first_order(seq[l - 1], seq[l]);
    sum.add(term);
    ++terms;
  }
  if (term_count) *term_count = terms;

  Scalar result = -sum.total();
  std::lock_guard<std::mutex> lock(mutex_);
  return curly_cache_.emplace(std::move(key), std::move(result)).first->second;
}

Scalar ImplicitEngine::window_dd(int a, int b) {
  if (a < 0 || b > n_ || a >= b) fail(ErrorCode::IndexOutOfRange, "bad window");
  if (b - a == 1) return first_order(a, b);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = window_cache_.find({a, b});
    if (it != window_cache_.end()) return it->second;
  }

  // Sum over inner sequences a = i_0 < ... < i_k = b (k >= 2) of the face
  // weight times recursively evaluated gap windows.
  Accumulator sum(p_.mode());
  for_each_subset_lex(a + 1, b - 1, [&](const std::vector<int>& interior) {
    std::vector<int> seq;
    seq.reserve(interior.size() + 2);
    seq.push_back(a);
    seq.insert(seq.end(), interior.begin(), interior.end());
    seq.push_back(b);
    Scalar term = curly(seq);
    for (size_t l = 1; l < seq.size(); ++l)
      if (seq[l] - seq[l - 1] >= 2) term *= window_dd(seq[l - 1], seq[l]);
    sum.add(term);
  });

  Scalar result = sum.total();
  std::lock_guard<std::mutex> lock(mutex_);
  return window_cache_.emplace(std::make_pair(a, b), std::move(result)).first->second;
}

Scalar ImplicitEngine::recursive_dd() { return window_dd(0, n_); }

EngineResult ImplicitEngine::main_dd() {
  if (n_ < 2) fail(ErrorCode::InvalidArgument, "partition formula needs order n >= 2");
  PartitionEnumerator en(n_);
  Accumulator sum(p_.mode());
  uint64_t used = 0;
  while (auto part = en.next()) {
    Scalar term = Scalar::one(p_.mode());
    for (const Face& face : part->faces) term *= curly(face);
    sum.add(term);
    ++used;
  }
  return {sum.total(), used};
}

ChainRuleResult ImplicitEngine::chain_rule(const std::function<Scalar(int, int)>& y_window_dd) {
  Accumulator sum(p_.mode());
  Scalar max_abs = Scalar::zero(p_.mode());

  auto add_sequence = [&](const std::vector<int>& seq) {
    int k = static_cast<int>(seq.size()) - 1;
    for (int s = 0; s <= k && seq[s] == s; ++s) {
      std::vector<int> xs(seq.begin(), seq.begin() + s + 1);
      std::vector<int> ys(seq.begin() + s, seq.end());
      Scalar term = p_.request(xs, ys);
      for (int l = s + 1; l <= k; ++l) term *= y_window_dd(seq[l - 1], seq[l]);
      sum.add(term);
      Scalar mag = abs(term);
      if ((max_abs - mag).is_negative()) max_abs = mag;
    }
  };

  std::vector<int> direct = {0, n_};
  add_sequence(direct);
  for_each_subset_lex(1, n_ - 1, [&](const std::vector<int>& interior) {
    std::vector<int> seq;
    seq.reserve(interior.size() + 2);
    seq.push_back(0);
    seq.insert(seq.end(), interior.begin(), interior.end());
    seq.push_back(n_);
    add_sequence(seq);
  });

  return {sum.total(), max_abs};
}

}  // namespace impdiff
