// Acceptance suite: exercises every stated criterion end to end and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "divdiff.hpp"
#include "engine.hpp"
#include "expr.hpp"
#include "oracle.hpp"
#include "partitions.hpp"
#include "providers.hpp"
#include "special.hpp"

using namespace impdiff;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
  void note(const std::string& text) {
    detail << (detail.tellp() > 0 ? "; " : "") << text;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Scalar rat(long long n, long long d = 1) { return Scalar::rational(n, d); }

uint64_t schroder_oracle(int n) {
  std::vector<uint64_t> a = {1, 1};
  for (int k = 2; k < n; ++k)
    a.push_back(((6 * k - 3) * a[k - 1] - (k - 2) * a[k - 2]) / (k + 1));
  return a[n - 1];
}

uint64_t catalan_oracle(int n) {
  uint64_t c = 1;
  for (int k = 1; k < n; ++k) c = c * (n - 1 + k) / k;
  return c / n;
}

bool scalar_less(const Scalar& a, const Scalar& b) { return (a - b).is_negative(); }

// Random strictly increasing rational knots with pairwise distinct values;
// optionally distinct absolute values too (needed when y depends on |x|).
std::vector<Scalar> random_rational_knots(std::mt19937& rng, int count, int lo_num, int hi_num,
                                          int max_den, bool distinct_abs) {
  std::uniform_int_distribution<int> num(lo_num, hi_num);
  std::uniform_int_distribution<int> den(1, max_den);
  std::vector<Scalar> knots;
  int attempts = 0;
  while (static_cast<int>(knots.size()) < count && ++attempts < 4000) {
    Scalar candidate = rat(num(rng), den(rng));
    bool fresh = true;
    for (const Scalar& k : knots) {
      if (k == candidate) fresh = false;
      if (distinct_abs && abs(k) == abs(candidate)) fresh = false;
    }
    if (fresh) knots.push_back(candidate);
  }
  std::sort(knots.begin(), knots.end(), scalar_less);
  return knots;
}

std::vector<double> random_float_knots(std::mt19937& rng, int count, double lo, double hi,
                                       double min_gap, bool distinct_abs) {
  std::uniform_real_distribution<double> box(lo, hi);
  std::vector<double> knots;
  int attempts = 0;
  while (static_cast<int>(knots.size()) < count && ++attempts < 20000) {
    double candidate = box(rng);
    bool fresh = true;
    for (double k : knots) {
      if (std::fabs(k - candidate) < min_gap) fresh = false;
      if (distinct_abs && std::fabs(std::fabs(k) - std::fabs(candidate)) < min_gap) fresh = false;
    }
    if (fresh) knots.push_back(candidate);
  }
  std::sort(knots.begin(), knots.end());
  return knots;
}

struct RationalConfig {
  ExprPtr g;
  KnotConfiguration cfg;
};

// Fixed family of polynomial implicit equations with exact rational
// solutions, used by the randomized equivalence sweeps.
RationalConfig random_rational_config(std::mt19937& rng, int n, int family) {
  switch (family % 4) {
    case 0: {  // y (1 + x^2) = 1
      ExprPtr g = parse_expr("y*(1 + x^2) - 1");
      std::vector<Scalar> x = random_rational_knots(rng, n + 1, 1, 40, 8, true);
      std::vector<Scalar> y;
      for (const Scalar& k : x) y.push_back(rat(1) / (rat(1) + k * k));
      return {g, make_knot_configuration(g, x, y, Mode::Rational)};
    }
    case 1: {  // x = y^3 + y
      ExprPtr g = parse_expr("x - y^3 - y");
      std::vector<Scalar> y = random_rational_knots(rng, n + 1, -24, 24, 6, false);
      std::vector<Scalar> x;
      for (const Scalar& k : y) x.push_back(k * k * k + k);
      return {g, make_knot_configuration(g, x, y, Mode::Rational)};
    }
    case 2: {  // x = y^3
      ExprPtr g = parse_expr("x - y^3");
      std::vector<Scalar> y = random_rational_knots(rng, n + 1, -24, 24, 6, false);
      std::vector<Scalar> x;
      for (const Scalar& k : y) x.push_back(k * k * k);
      return {g, make_knot_configuration(g, x, y, Mode::Rational)};
    }
    default: {  // unit circle, upper branch, via rational parametrization
      ExprPtr g = parse_expr("x^2 + y^2 - 1");
      std::uniform_int_distribution<int> num(1, 30);
      std::uniform_int_distribution<int> den(1, 30);
      std::vector<Scalar> ts;
      int attempts = 0;
      while (static_cast<int>(ts.size()) < n + 1 && ++attempts < 4000) {
        Scalar t = rat(num(rng), den(rng));
        bool fresh = true;
        for (const Scalar& u : ts) {
          if (u == t) fresh = false;
          if (u * t == rat(1)) fresh = false;  // reciprocal t gives the same y
        }
        if (fresh) ts.push_back(t);
      }
      std::vector<std::pair<Scalar, Scalar>> points;
      for (const Scalar& t : ts) {
        Scalar den_t = rat(1) + t * t;
        points.emplace_back((rat(1) - t * t) / den_t, rat(2) * t / den_t);
      }
      std::sort(points.begin(), points.end(),
                [](const auto& a, const auto& b) { return scalar_less(a.first, b.first); });
      std::vector<Scalar> x, y;
      for (auto& [px, py] : points) {
        x.push_back(px);
        y.push_back(py);
      }
      return {g, make_knot_configuration(g, x, y, Mode::Rational)};
    }
  }
}

struct FloatConfig {
  ExprPtr g;
  KnotConfiguration cfg;
};

FloatConfig make_float_config(const char* g_text, const std::vector<double>& x,
                              const std::function<double(double)>& solution) {
  ExprPtr g = parse_expr(g_text);
  std::vector<Scalar> xs, ys;
  for (double v : x) {
    xs.push_back(Scalar::real(v));
    ys.push_back(Scalar::real(solution(v)));
  }
  return {g, make_knot_configuration(g, xs, ys, Mode::Float)};
}

FloatConfig random_float_config(std::mt19937& rng, int n, int family) {
  switch (family % 3) {
    case 0: {
      std::vector<double> x = random_float_knots(rng, n + 1, -0.82, 0.82, 0.06, true);
      return make_float_config("x^2 + y^2 - 1", x,
                               [](double v) { return std::sqrt(1.0 - v * v); });
    }
    case 1: {
      std::vector<double> x = random_float_knots(rng, n + 1, -2.0, 2.0, 0.05, false);
      return make_float_config("x - y^3 - y", x, [](double v) {
        // Closed-form real root of y^3 + y = v.
        double d = std::sqrt(v * v / 4.0 + 1.0 / 27.0);
        return std::cbrt(v / 2.0 + d) + std::cbrt(v / 2.0 - d);
      });
    }
    default: {
      std::vector<double> x = random_float_knots(rng, n + 1, -2.0, 2.0, 0.06, true);
      return make_float_config("y*(1 + x^2) - 1", x,
                               [](double v) { return 1.0 / (1.0 + v * v); });
    }
  }
}

bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// ---------------------------------------------------------------------------

Check criterion_partition_counts() {
  Check c;
  auto start = std::chrono::steady_clock::now();
  const uint64_t expected[] = {1, 3, 11, 45, 197, 903, 4279};
  for (int n = 2; n <= 8; ++n) {
    uint64_t count = count_partitions(n);
    c.expect(count == expected[n - 2], "count mismatch at n=" + std::to_string(n));
    c.expect(count == schroder_oracle(n), "recurrence oracle mismatch at n=" + std::to_string(n));
  }
  double elapsed = seconds_since(start);
  c.expect(elapsed < 5.0, "enumeration too slow");
  std::ostringstream note;
  note << "4279 partitions at n=8, total " << elapsed << " s";
  c.note(note.str());
  return c;
}

Check criterion_triangulation_counts() {
  Check c;
  const uint64_t expected[] = {1, 2, 5, 14, 42, 132, 429, 1430};
  for (int n = 2; n <= 9; ++n) {
    uint64_t count = count_partitions(n, true);
    c.expect(count == expected[n - 2], "count mismatch at n=" + std::to_string(n));
    c.expect(count == catalan_oracle(n), "formula mismatch at n=" + std::to_string(n));
    // Cross-check by filtering the full enumeration.
    PartitionEnumerator en(n);
    uint64_t filtered = 0;
    while (auto p = en.next()) {
      bool all_triangles = true;
      for (const Face& f : p->faces) all_triangles &= f.size() == 3;
      if (all_triangles) ++filtered;
    }
    c.expect(filtered == count, "filter mismatch at n=" + std::to_string(n));
  }
  c.note("n=2..9: 1,2,5,14,42,132,429,1430");
  return c;
}

Check criterion_route_equivalence() {
  Check c;
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(1001);
  std::uniform_int_distribution<int> order(2, 7);
  int rational_runs = 0, float_runs = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = order(rng);
    if (trial % 2 == 0) {
      RationalConfig rc = random_rational_config(rng, n, trial / 2);
      GridProvider provider(rc.g, rc.cfg);
      ImplicitEngine engine(provider, rc.cfg.order());
      EngineResult main = engine.main_dd();
      c.expect(main.value == engine.recursive_dd(),
               "rational mismatch, trial " + std::to_string(trial));
      c.expect(main.partitions_used == schroder_oracle(rc.cfg.order()),
               "partition count mismatch, trial " + std::to_string(trial));
      ++rational_runs;
    } else {
      FloatConfig fc = random_float_config(rng, n, trial / 2);
      GridProvider provider(fc.g, fc.cfg);
      ImplicitEngine engine(provider, fc.cfg.order());
      double main = engine.main_dd().value.to_double();
      double rec = engine.recursive_dd().to_double();
      c.expect(rel_close(main, rec, 1e-9), "float mismatch, trial " + std::to_string(trial));
      ++float_runs;
    }
  }
  double elapsed = seconds_since(start);
  c.expect(elapsed < 60.0, "sweep too slow");
  std::ostringstream note;
  note << rational_runs << " rational + " << float_runs << " float configs, n in 2..7, "
       << elapsed << " s";
  c.note(note.str());
  return c;
}

// Shared between criteria 4 and 5.
struct OracleCase {
  ExprPtr g;
  KnotConfiguration cfg;
  std::vector<double> x, y;
};
std::vector<OracleCase> g_oracle_cases;

Check criterion_oracle_equivalence() {
  Check c;
  g_oracle_cases.clear();
  std::mt19937 rng(2002);
  std::uniform_int_distribution<int> order(2, 6);
  struct Family {
    const char* g;
    double lo, hi;
    bool distinct_abs;
    double seed;
  };
  const Family families[] = {
      {"x^2 + y^2 - 1", -0.82, 0.82, true, 1.0},
      {"x - y^3 - y", -2.0, 2.0, false, 0.0},
      {"y*(1 + x^2) - 1", -2.0, 2.0, true, 1.0},
  };
  for (const Family& family : families) {
    ExprPtr g = parse_expr(family.g);
    for (int trial = 0; trial < 50; ++trial) {
      int n = order(rng);
      std::vector<double> x =
          random_float_knots(rng, n + 1, family.lo, family.hi, 0.06, family.distinct_abs);
      BranchSeed seed{{family.seed}};
      BranchSolution sol = solve_branch(g, x, seed);
      for (int i = 0; i <= n; ++i)
        c.expect(sol.iterations[i] <= seed.max_iterations, "iteration budget exceeded");

      std::vector<Scalar> xs, ys;
      for (int i = 0; i <= n; ++i) {
        xs.push_back(Scalar::real(x[i]));
        ys.push_back(Scalar::real(sol.y[i]));
      }
      KnotConfiguration cfg = make_knot_configuration(g, xs, ys, Mode::Float);
      GridProvider provider(g, cfg);
      ImplicitEngine engine(provider, cfg.order());
      double truth = direct_dd_y(x, sol.y);
      double main = engine.main_dd().value.to_double();
      double rec = engine.recursive_dd().to_double();
      c.expect(rel_close(main, truth, 1e-8),
               std::string(family.g) + ": main route off at trial " + std::to_string(trial));
      c.expect(rel_close(rec, truth, 1e-8),
               std::string(family.g) + ": recursive route off at trial " + std::to_string(trial));
      g_oracle_cases.push_back({g, std::move(cfg), x, sol.y});
    }
  }
  c.note("3 equations x 50 Newton-solved knot sets, n in 2..6, tolerance 1e-8");
  return c;
}

Check criterion_chain_rule() {
  Check c;
  c.expect(!g_oracle_cases.empty(), "no stored configurations (criterion 4 must run first)");
  for (size_t i = 0; i < g_oracle_cases.size(); ++i) {
    OracleCase& oc = g_oracle_cases[i];
    GridProvider provider(oc.g, oc.cfg);
    ImplicitEngine engine(provider, oc.cfg.order());
    const KnotConfiguration& cfg = oc.cfg;
    ChainRuleResult r = engine.chain_rule([&cfg](int a, int b) {
      std::vector<Scalar> k(cfg.x.begin() + a, cfg.x.begin() + b + 1);
      std::vector<Scalar> v(cfg.y.begin() + a, cfg.y.begin() + b + 1);
      return univariate_dd(k, v);
    });
    double scale = std::max(1.0, r.max_abs_term.to_double());
    c.expect(std::fabs(r.value.to_double()) <= 1e-9 * scale,
             "nonzero residual in case " + std::to_string(i));
  }
  c.note("scaled residual <= 1e-9 on all " + std::to_string(g_oracle_cases.size()) + " cases");
  return c;
}

Check criterion_circle_closed_form() {
  Check c;
  ExprPtr g = parse_expr("x^2 + y^2 - 1");

  // Exact agreement of the closed form with the engine weight on all faces.
  static const std::pair<long long, long long> ts[] = {{7, 1}, {4, 1}, {5, 2}, {5, 3},
                                                       {1, 1}, {2, 3}, {3, 8}};
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::pair<Scalar, Scalar>> points;
    for (int i = 0; i <= n; ++i) {
      Scalar t = rat(ts[i].first, ts[i].second);
      Scalar den = rat(1) + t * t;
      points.emplace_back((rat(1) - t * t) / den, rat(2) * t / den);
    }
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return scalar_less(a.first, b.first); });
    std::vector<Scalar> x, y;
    for (auto& [px, py] : points) {
      x.push_back(px);
      y.push_back(py);
    }
    KnotConfiguration cfg = make_knot_configuration(g, x, y, Mode::Rational);
    GridProvider provider(g, cfg);
    ImplicitEngine engine(provider, n);
    for (int a = 0; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        for (int cc = b + 1; cc <= n; ++cc) {
          Face face = {a, b, cc};
          c.expect(circle_curly(face, cfg) == engine.curly(face),
                   "face weight mismatch at n=" + std::to_string(n));
        }
    c.expect(circle_implicit_dd(cfg).value == engine.main_dd().value,
             "triangulation-only sum differs at n=" + std::to_string(n));
  }

  // Quadrilateral assembly against the hand-expanded two-triangulation sum and
  // the solved-branch ground truth.
  std::vector<double> xs = {-0.6, -0.2, 0.3, 0.8};
  std::vector<Scalar> x, y;
  for (double v : xs) {
    x.push_back(Scalar::real(v));
    y.push_back(Scalar::real(std::sqrt(1.0 - v * v)));
  }
  KnotConfiguration cfg = make_knot_configuration(g, x, y, Mode::Float);
  auto X = [&](int i) { return cfg.x[i].to_double(); };
  auto Y = [&](int i) { return cfg.y[i].to_double(); };
  double expanded =
      -1.0 / ((Y(0) + Y(3)) * (Y(0) + Y(2))) *
          (1.0 + (X(0) + X(1)) / (Y(0) + Y(1)) * ((X(1) + X(2)) / (Y(1) + Y(2)))) *
          ((X(2) + X(3)) / (Y(2) + Y(3))) +
      -1.0 / ((Y(0) + Y(3)) * (Y(1) + Y(3))) *
          (1.0 + (X(1) + X(2)) / (Y(1) + Y(2)) * ((X(2) + X(3)) / (Y(2) + Y(3)))) *
          ((X(0) + X(1)) / (Y(0) + Y(1)));
  double assembled = circle_implicit_dd(cfg).value.to_double();
  double truth = univariate_dd(cfg.x, cfg.y).to_double();
  c.expect(std::fabs(assembled - expanded) <= 1e-12 * std::fabs(expanded),
           "assembly differs from the hand-expanded sum");
  c.expect(std::fabs(assembled - truth) <= 1e-10 * std::fabs(truth),
           "assembly differs from the direct divided difference");
  c.note("all faces exact for n<=6; quadrilateral vs expanded sum and oracle at 1e-10");
  return c;
}

Check criterion_inverse() {
  Check c;
  std::mt19937 rng(3003);
  const char* h_exprs[] = {"y^2", "y^3", "y^3 + y"};
  for (const char* h_text : h_exprs) {
    ExprPtr h = parse_expr(h_text);
    ExprPtr g = Expr::sub(Expr::variable(Var::X), h);
    for (int n = 2; n <= 6; ++n) {
      // y^2 needs one-signed knots for monotonicity.
      bool positive_only = std::string(h_text) == "y^2";
      std::vector<Scalar> y =
          random_rational_knots(rng, n + 1, positive_only ? 1 : -20, 20, 6, false);
      std::vector<Scalar> x;
      for (const Scalar& k : y)
        x.push_back(eval(*h, k, k, Mode::Rational));
      KnotConfiguration cfg = make_knot_configuration(g, x, y, Mode::Rational);
      ExprHSource source(h, cfg.y, Mode::Rational);
      Scalar via_formula = inverse_dd(source, cfg);
      GridProvider provider(g, cfg);
      ImplicitEngine engine(provider, cfg.order());
      c.expect(via_formula == engine.main_dd().value,
               std::string(h_text) + " mismatch at n=" + std::to_string(n));
      c.expect(via_formula == univariate_dd(cfg.x, cfg.y),
               std::string(h_text) + " oracle mismatch at n=" + std::to_string(n));
    }
  }
  // The worked square-root triangle.
  ExprPtr h = parse_expr("y^2");
  ExprPtr g = Expr::sub(Expr::variable(Var::X), h);
  KnotConfiguration cfg = make_knot_configuration(
      g, {rat(1), rat(4), rat(9)}, {rat(1), rat(2), rat(3)}, Mode::Rational);
  ExprHSource source(h, cfg.y, Mode::Rational);
  c.expect(inverse_dd(source, cfg) == rat(-1, 60), "sqrt triangle is not -1/60");
  c.note("h in {y^2, y^3, y^3+y}, n<=6, exact; triangle case -1/60");
  return c;
}

Check criterion_quotient() {
  Check c;
  std::mt19937 rng(4004);
  std::uniform_int_distribution<int> order(2, 6);
  std::uniform_int_distribution<int> degree(0, 4);
  std::uniform_int_distribution<long long> coeff(-9, 9);
  int runs = 0;
  while (runs < 100) {
    int n = order(rng);
    std::vector<Scalar> x = random_rational_knots(rng, n + 1, -30, 30, 6, false);
    auto random_poly = [&](bool nonzero_leading) {
      int d = degree(rng);
      std::vector<Scalar> coeffs;
      for (int i = 0; i < d; ++i) coeffs.push_back(rat(coeff(rng)));
      coeffs.push_back(rat(nonzero_leading ? 2 * coeff(rng) + 1 : coeff(rng)));
      return coeffs;
    };
    auto eval_poly = [](const std::vector<Scalar>& coeffs, const Scalar& at) {
      Scalar acc = rat(0);
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * at + *it;
      return acc;
    };
    std::vector<Scalar> pc = random_poly(false), qc = random_poly(true);
    std::vector<Scalar> pv, qv, ratio;
    bool q_ok = true;
    for (const Scalar& k : x) {
      Scalar q = eval_poly(qc, k);
      if (q.is_zero()) q_ok = false;
      qv.push_back(q);
      pv.push_back(eval_poly(pc, k));
    }
    if (!q_ok) continue;
    for (size_t i = 0; i < pv.size(); ++i) ratio.push_back(pv[i] / qv[i]);
    c.expect(quotient_dd(pv, qv, x) == univariate_dd(x, ratio),
             "quotient mismatch in run " + std::to_string(runs));
    ++runs;
  }
  c.note("100 random (P, Q, knots) with deg <= 4, n <= 6, exact");
  return c;
}

Check criterion_confluent() {
  Check c;
  ExprPtr g = parse_expr("x^2 + y^2 - 1");
  std::mt19937 rng(5005);
  std::uniform_real_distribution<double> box(-0.85, 0.85);
  std::uniform_int_distribution<int> sign(0, 1);

  // Symbolic route for the third derivative of the explicit branch.
  ExprPtr upper = parse_expr("sqrt(1 - x^2)");
  ExprPtr d3_upper = diff(diff(diff(upper, Var::X), Var::X), Var::X);

  for (int trial = 0; trial < 20; ++trial) {
    double x0 = box(rng);
    double branch = sign(rng) ? 1.0 : -1.0;
    double y0 = branch * std::sqrt(1.0 - x0 * x0);
    double d1 = confluent_derivative(g, Scalar::real(x0), Scalar::real(y0), 1, Mode::Float)
                    .to_double();
    double d2 = confluent_derivative(g, Scalar::real(x0), Scalar::real(y0), 2, Mode::Float)
                    .to_double();
    double d3 = confluent_derivative(g, Scalar::real(x0), Scalar::real(y0), 3, Mode::Float)
                    .to_double();
    c.expect(rel_close(d1, -x0 / y0, 1e-8), "y' off at trial " + std::to_string(trial));
    c.expect(rel_close(d2, -1.0 / (y0 * y0 * y0), 1e-8),
             "y'' off at trial " + std::to_string(trial));
    double d3_symbolic =
        branch *
        eval(*d3_upper, Scalar::real(x0), Scalar::real(0.0), Mode::Float).to_double();
    c.expect(rel_close(d3, d3_symbolic, 1e-8), "y''' off at trial " + std::to_string(trial));
  }

  // Cluster limit: one-sided knot clusters around x0 must approach
  // y^(n)(x0)/n! at first order in the radius.
  double x0 = 0.4;
  double y0 = std::sqrt(1.0 - x0 * x0);
  auto cluster_error = [&](int n, double h) {
    std::vector<Scalar> xs, ys;
    for (int i = 0; i <= n; ++i) {
      double xv = x0 + h * static_cast<double>(i) / n;
      xs.push_back(Scalar::real(xv));
      ys.push_back(Scalar::real(std::sqrt(1.0 - xv * xv)));
    }
    KnotConfiguration cfg = make_knot_configuration(g, xs, ys, Mode::Float);
    GridProvider provider(g, cfg);
    ImplicitEngine engine(provider, n);
    double dd = engine.main_dd().value.to_double();
    double target = n == 2 ? -1.0 / (2.0 * y0 * y0 * y0) : -x0 / (2.0 * std::pow(y0, 5));
    return std::fabs(dd - target);
  };
  for (int n : {2, 3}) {
    double e2 = cluster_error(n, 1e-2);
    double e3 = cluster_error(n, 1e-3);
    double order = std::log10(e2 / e3);
    c.expect(order >= 0.9, "cluster-limit order " + std::to_string(order) +
                               " below 1 at n=" + std::to_string(n));
  }
  c.note("20 random points on both branches at 1e-8; cluster order >= 1 for n=2,3");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Check()> run;
  };
  const Criterion criteria[] = {
      {1, "partition counts 1,3,11,45,197,903,4279 for n=2..8", criterion_partition_counts},
      {2, "triangulation counts C(n-1) for n=2..9", criterion_triangulation_counts},
      {3, "route equivalence on 200 randomized configurations", criterion_route_equivalence},
      {4, "both routes match Newton-solved ground truth (rel 1e-8)", criterion_oracle_equivalence},
      {5, "chain-rule residual vanishes on every solved configuration", criterion_chain_rule},
      {6, "circle closed form: exact face weights and quadrilateral assembly",
       criterion_circle_closed_form},
      {7, "inverse-function formula reduction (exact, incl. -1/60)", criterion_inverse},
      {8, "quotient rule vs sampled quotients (100 runs, exact)", criterion_quotient},
      {9, "confluent derivative formulas and cluster-limit order", criterion_confluent},
  };

  int failures = 0;
  auto total_start = std::chrono::steady_clock::now();
  for (const Criterion& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail << "unexpected exception: " << e.what();
    }
    double elapsed = seconds_since(start);
    std::ostringstream line;
    line << (result.ok ? "[PASS] " : "[FAIL] ") << criterion.id << ". " << criterion.title;
    std::string detail = result.detail.str();
    if (!detail.empty()) line << " (" << detail << ")";
    line.precision(2);
    line << " [" << std::fixed << elapsed << " s]";
    std::printf("%s\n", line.str().c_str());
    if (!result.ok) ++failures;
  }
  std::printf("%d/9 criteria passed in %.1f s\n", 9 - failures,
              seconds_since(total_start));
  return failures;
}
