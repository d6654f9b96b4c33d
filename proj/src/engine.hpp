#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "providers.hpp"

namespace impdiff {

struct EngineResult {
  Scalar value;
  uint64_t partitions_used = 0;
};

struct ChainRuleResult {
  Scalar value;         // should vanish when the y values solve g = 0
  Scalar max_abs_term;  // magnitude of the largest summand, for scaling
};

// Evaluation session for divided differences of the implicitly defined y.
// All intermediate quantities (pivots, first-order differences, face weights,
// window values) are cached for the lifetime of the session; cache access is
// guarded so concurrent evaluation stays idempotent.
class ImplicitEngine {
 public:
  // Near-singular pivot threshold in float mode: |pivot| < pivot_rel * scale.
  ImplicitEngine(BivariateDDProvider& provider, int order, double pivot_rel = 1e-12);

  int order() const { return n_; }

  // [x_i, x_j]y = -[ij; j]g / [i; ij]g for an adjacent-in-use index pair.
  Scalar first_order(int i, int j);

  // Face weight {i_0...i_k}g: a signed sum of divided-difference quotients of
  // g, one term per leading consecutive index; term_count reports how many
  // terms were evaluated.
  Scalar curly(std::span<const int> seq, int* term_count = nullptr);

  // [0..n]y by recursing on the face attached to the edge (0, n): sum over
  // inner sequences of the face weight times window values over gaps >= 2.
  Scalar recursive_dd();

  // [0..n]y as the sum over all polygon partitions of the product of face
  // weights; deterministic enumeration order, compensated float summation.
  EngineResult main_dd();

  // Right-hand side of the graph chain rule evaluated with externally
  // supplied window values [a..b]y; vanishes when g(x_i, y_i) = 0.
  ChainRuleResult chain_rule(const std::function<Scalar(int, int)>& y_window_dd);

  // [a..b]y over the consecutive window a..b (the recursive route's memo).
  Scalar window_dd(int a, int b);

 private:
  Scalar pivot(int i, int k);

  BivariateDDProvider& p_;
  int n_;
  double pivot_rel_;

  std::mutex mutex_;
  std::map<std::pair<int, int>, Scalar> pivot_cache_;
  std::map<std::pair<int, int>, Scalar> first_order_cache_;
  std::map<std::pair<int, int>, Scalar> window_cache_;
  std::map<std::vector<int>, Scalar> curly_cache_;
};

// Mode-aware accumulator: exact sums in rational mode, Kahan compensation in
// float mode.
class Accumulator {
 public:
  explicit Accumulator(Mode mode) : mode_(mode) {}

  void add(const Scalar& s);
  Scalar total() const;

 private:
  Mode mode_;
  BigRational rational_sum_{0};
  double float_sum_ = 0.0;
  double compensation_ = 0.0;
};

// Nonempty subsets of {lo..hi} as increasing sequences, lexicographic order.
template <typename F>
void for_each_subset_lex(int lo, int hi, F&& fn) {
  if (lo > hi) return;
  std::vector<int> cur = {lo};
  while (true) {
    fn(static_cast<const std::vector<int>&>(cur));
    if (cur.back() < hi) {
      cur.push_back(cur.back() + 1);
    } else {
      cur.pop_back();
      if (cur.empty()) break;
      ++cur.back();
    }
  }
}

}  // namespace impdiff
