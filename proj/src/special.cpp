#include "special.hpp"

#include <cmath>

namespace impdiff {

CurlyCase classify_triangle(const Face& face) {
  if (face.size() != 3) fail(ErrorCode::InvalidArgument, "face must be a triangle");
  bool ab = face[1] - face[0] == 1;
  bool bc = face[2] - face[1] == 1;
  if (ab && bc) return CurlyCase::AllConsecutive;
  if (ab) return CurlyCase::ABConsecutive;
  if (bc) return CurlyCase::BCConsecutive;
  return CurlyCase::NoneConsecutive;
}

Scalar circle_curly(const Face& face, const KnotConfiguration& cfg) {
  CurlyCase c = classify_triangle(face);
  int a = face[0], b = face[1], cc = face[2];
  if (cc > cfg.order()) fail(ErrorCode::IndexOutOfRange, "face vertex out of range");
  const Scalar &xa = cfg.x[a], &xb = cfg.x[b], &xc = cfg.x[cc];
  const Scalar &ya = cfg.y[a], &yb = cfg.y[b], &yc = cfg.y[cc];
  Scalar one = Scalar::one(cfg.mode);
  switch (c) {
    case CurlyCase::AllConsecutive:
      return -(one / (ya + yc)) * (one + ((xa + xb) / (ya + yb)) * ((xb + xc) / (yb + yc)));
    case CurlyCase::ABConsecutive:
      return (one / (ya + yc)) * ((xa + xb) / (ya + yb));
    case CurlyCase::BCConsecutive:
      return (one / (ya + yc)) * ((xb + xc) / (yb + yc));
    case CurlyCase::NoneConsecutive:
      return -(one / (ya + yc));
  }
  fail(ErrorCode::Internal, "unreachable");
}

EngineResult circle_implicit_dd(const KnotConfiguration& cfg) {
  int n = cfg.order();
  if (n < 2) fail(ErrorCode::InvalidArgument, "partition formula needs order n >= 2");
  PartitionEnumerator en(n, /*triangulations_only=*/true);
  Accumulator sum(cfg.mode);
  uint64_t used = 0;
  while (auto part = en.next()) {
    Scalar term = Scalar::one(cfg.mode);
    for (const Face& face : part->faces) term *= circle_curly(face, cfg);
    sum.add(term);
    ++used;
  }
  return {sum.total(), used};
}

namespace {

void check_edge_dd(const Scalar& v, int a, int b, Mode mode) {
  bool singular = mode == Mode::Rational ? v.is_zero() : std::fabs(v.to_double()) < 1e-12;
  if (singular)
    fail(ErrorCode::SingularPivot, "edge difference [y_" + std::to_string(a) + ", y_" +
                                       std::to_string(b) + "]h vanishes");
}

}  // namespace

Scalar inverse_dd(UnivariateDDSource& h, const KnotConfiguration& cfg) {
  int n = cfg.order();
  if (n < 2) fail(ErrorCode::InvalidArgument, "partition formula needs order n >= 2");
  Mode mode = cfg.mode;
  PartitionEnumerator en(n);
  Accumulator sum(mode);
  while (auto part = en.next()) {
    Scalar term = part->faces.size() % 2 == 1 ? -Scalar::one(mode) : Scalar::one(mode);
    for (const Face& face : part->faces) term *= h.dd(face);
    for (const auto& [a, b] : edges(*part)) {
      int pair[2] = {a, b};
      Scalar edge = h.dd(pair);
      check_edge_dd(edge, a, b, mode);
      term /= edge;
    }
    sum.add(term);
  }
  return sum.total();
}

Scalar quotient_dd(std::span<const Scalar> p_values, std::span<const Scalar> q_values,
                   std::span<const Scalar> x_knots) {
  size_t count = x_knots.size();
  if (count == 0) fail(ErrorCode::InvalidArgument, "at least one knot required");
  if (p_values.size() != count || q_values.size() != count)
    fail(ErrorCode::LengthMismatch, "sample lists must match the knot count");
  for (size_t i = 0; i < count; ++i)
    if (q_values[i].is_zero())
      fail(ErrorCode::ZeroDenominator, "Q vanishes at knot " + std::to_string(i));

  Mode mode = x_knots[0].mode();
  int n = static_cast<int>(count) - 1;

  // Divided differences over consecutive knot windows a..b.
  auto window = [&](std::span<const Scalar> values, int a, int b) {
    std::vector<Scalar> k(x_knots.begin() + a, x_knots.begin() + b + 1);
    std::vector<Scalar> v(values.begin() + a, values.begin() + b + 1);
    return univariate_dd(k, v);
  };

  Accumulator result(mode);
  result.add(window(p_values, 0, n) / q_values[0]);
  for (int r = 1; r <= n; ++r) {
    // sum over 0 = i_0 < i_1 < ... < i_k = r of (-1)^k prod [i_{j-1}..i_j]Q / Q_{i_{j-1}}
    Accumulator inner(mode);
    auto add_sequence = [&](const std::vector<int>& seq) {
      int k = static_cast<int>(seq.size()) - 1;
      Scalar prod = k % 2 == 1 ? -Scalar::one(mode) : Scalar::one(mode);
      for (int j = 1; j <= k; ++j)
        prod *= window(q_values, seq[j - 1], seq[j]) / q_values[seq[j - 1]];
      inner.add(prod);
    };
    std::vector<int> direct = {0, r};
    add_sequence(direct);
    for_each_subset_lex(1, r - 1, [&](const std::vector<int>& interior) {
      std::vector<int> seq;
      seq.push_back(0);
      seq.insert(seq.end(), interior.begin(), interior.end());
      seq.push_back(r);
      add_sequence(seq);
    });
    result.add(window(p_values, r, n) / q_values[r] * inner.total());
  }
  return result.total();
}

bool quotient_partition_contributes(const Partition& p) {
  for (const auto& [a, b] : edges(p)) {
    bool boundary = (b == a + 1) || (a == 0 && b == p.n);
    if (!boundary && b != p.n) return false;
  }
  return true;
}

namespace {

struct ThirdDerivativeTerm {
  int coefficient;
  struct Factor {
    int s, t, power;
  } factors[3];
  int factor_count;
  int denominator_power;  // power of g_01
};

// y''' as a literal coefficient table over monomials in g_st.
constexpr ThirdDerivativeTerm kThirdDerivative[] = {
    {-1, {{3, 0, 1}}, 1, 1},
    {3, {{2, 1, 1}, {1, 0, 1}}, 2, 2},
    {3, {{2, 0, 1}, {1, 1, 1}}, 2, 2},
    {-3, {{2, 0, 1}, {1, 0, 1}, {0, 2, 1}}, 3, 3},
    {-3, {{1, 2, 1}, {1, 0, 2}}, 2, 3},
    {-6, {{1, 1, 2}, {1, 0, 1}}, 2, 3},
    {1, {{1, 0, 3}, {0, 3, 1}}, 2, 4},
    {9, {{1, 1, 1}, {1, 0, 2}, {0, 2, 1}}, 3, 4},
    {-3, {{1, 0, 3}, {0, 2, 2}}, 2, 5},
};

}  // namespace

Scalar confluent_derivative(const ExprPtr& g, const Scalar& x0, const Scalar& y0, int order,
                            Mode mode, double residual_tol) {
  if (order < 1 || order > 3)
    fail(ErrorCode::InvalidArgument, "derivative order must be 1, 2 or 3");

  Scalar residual = eval(*g, x0.to_mode(mode), y0.to_mode(mode), mode);
  if (mode == Mode::Rational) {
    if (!residual.is_zero())
      fail(ErrorCode::Residual, "point does not solve g exactly: residual " + residual.str());
  } else if (std::fabs(residual.to_double()) > residual_tol) {
    fail(ErrorCode::Residual,
         "point residual " + format_double(residual.to_double()) + " exceeds tolerance");
  }

  ConfluentProvider partials(g, x0, y0, mode);
  Scalar g01 = partials.partial(0, 1);
  bool singular =
      mode == Mode::Rational ? g01.is_zero() : std::fabs(g01.to_double()) < 1e-12;
  if (singular) fail(ErrorCode::SingularPivot, "g_01 vanishes at the evaluation point");

  Scalar g10 = partials.partial(1, 0);
  if (order == 1) return -g10 / g01;

  if (order == 2) {
    Scalar g20 = partials.partial(2, 0);
    Scalar g11 = partials.partial(1, 1);
    Scalar g02 = partials.partial(0, 2);
    Scalar two = Scalar::from_int(2, mode);
    return -g20 / g01 + two * g11 * g10 / pow_scalar(g01, 2) -
           g02 * g10 * g10 / pow_scalar(g01, 3);
  }

  Accumulator sum(mode);
  for (const auto& term : kThirdDerivative) {
    Scalar v = Scalar::from_int(term.coefficient, mode);
    for (int i = 0; i < term.factor_count; ++i) {
      const auto& f = term.factors[i];
      v *= pow_scalar(partials.partial(f.s, f.t), f.power);
    }
    sum.add(v / pow_scalar(g01, term.denominator_power));
  }
  return sum.total();
}

}  // namespace impdiff
