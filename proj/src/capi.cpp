#include "impdiff/impdiff.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "config.hpp"
#include "divdiff.hpp"
#include "engine.hpp"
#include "expr.hpp"
#include "oracle.hpp"
#include "partitions.hpp"
#include "providers.hpp"
#include "scalar.hpp"
#include "special.hpp"

using namespace impdiff;

extern "C" {

struct impdiff_expr {
  ExprPtr e;
};

struct impdiff_config {
  ExprPtr g;
  KnotConfiguration cfg;
};

struct impdiff_partition_iter {
  PartitionEnumerator en;
};

}  // extern "C"

namespace {

thread_local std::string t_last_error;
thread_local long t_last_position = -1;

impdiff_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return IMPDIFF_ERR_INVALID_ARGUMENT;
    case ErrorCode::LengthMismatch: return IMPDIFF_ERR_LENGTH_MISMATCH;
    case ErrorCode::PartialConfluency: return IMPDIFF_ERR_PARTIAL_CONFLUENCY;
    case ErrorCode::IndexOutOfRange: return IMPDIFF_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::Syntax: return IMPDIFF_ERR_SYNTAX;
    case ErrorCode::Domain: return IMPDIFF_ERR_DOMAIN;
    case ErrorCode::Mode: return IMPDIFF_ERR_MODE;
    case ErrorCode::SingularPivot: return IMPDIFF_ERR_SINGULAR_PIVOT;
    case ErrorCode::NoConvergence: return IMPDIFF_ERR_NO_CONVERGENCE;
    case ErrorCode::DerivativeVanished: return IMPDIFF_ERR_DERIVATIVE_VANISHED;
    case ErrorCode::BranchJump: return IMPDIFF_ERR_BRANCH_JUMP;
    case ErrorCode::ZeroDenominator: return IMPDIFF_ERR_ZERO_DENOMINATOR;
    case ErrorCode::Residual: return IMPDIFF_ERR_RESIDUAL;
    case ErrorCode::Internal: return IMPDIFF_ERR_INTERNAL;
  }
  return IMPDIFF_ERR_INTERNAL;
}

template <typename F>
impdiff_status guarded(F&& body) {
  t_last_error.clear();
  t_last_position = -1;
  try {
    body();
    return IMPDIFF_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    t_last_position = e.position();
    return status_of(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return IMPDIFF_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* message) {
  if (!cond) fail(ErrorCode::InvalidArgument, message);
}

Mode resolve_mode(impdiff_mode mode, const Expr* expr,
                  std::initializer_list<const char* const*> lists = {},
                  std::initializer_list<size_t> counts = {}) {
  if (mode == IMPDIFF_MODE_RATIONAL) return Mode::Rational;
  if (mode == IMPDIFF_MODE_FLOAT) return Mode::Float;
  if (expr && requires_float(*expr)) return Mode::Float;
  auto count_it = counts.begin();
  for (const char* const* list : lists) {
    size_t count = *count_it++;
    for (size_t i = 0; i < count; ++i)
      if (list[i] && literal_requires_float(list[i])) return Mode::Float;
  }
  return Mode::Rational;
}

std::vector<Scalar> parse_list(const char* const* items, size_t count, Mode mode) {
  require(items != nullptr, "null list");
  std::vector<Scalar> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    require(items[i] != nullptr, "null list entry");
    out.push_back(parse_scalar(items[i], mode));
  }
  return out;
}

}  // namespace

extern "C" {

const char* impdiff_version(void) { return "0.1.0"; }

const char* impdiff_last_error(void) { return t_last_error.c_str(); }

long impdiff_last_error_position(void) { return t_last_position; }

void impdiff_string_free(char* s) { std::free(s); }

impdiff_status impdiff_expr_parse(const char* text, impdiff_expr** out_expr) {
  return guarded([&] {
    require(text && out_expr, "null argument");
    *out_expr = new impdiff_expr{parse_expr(text)};
  });
}

void impdiff_expr_free(impdiff_expr* e) { delete e; }

impdiff_status impdiff_expr_print(const impdiff_expr* e, char** out_text) {
  return guarded([&] {
    require(e && out_text, "null argument");
    *out_text = dup_string(print_expr(*e->e));
  });
}

impdiff_status impdiff_expr_diff(const impdiff_expr* e, char var, impdiff_expr** out_expr) {
  return guarded([&] {
    require(e && out_expr, "null argument");
    require(var == 'x' || var == 'y', "variable must be 'x' or 'y'");
    *out_expr = new impdiff_expr{diff(e->e, var == 'x' ? Var::X : Var::Y)};
  });
}

impdiff_status impdiff_expr_eval(const impdiff_expr* e, const char* x, const char* y,
                                 impdiff_mode mode, char** out_value) {
  return guarded([&] {
    require(e && x && y && out_value, "null argument");
    const char* const xs[] = {x};
    const char* const ys[] = {y};
    Mode m = resolve_mode(mode, e->e.get(), {xs, ys}, {1, 1});
    Scalar v = eval(*e->e, parse_scalar(x, m), parse_scalar(y, m), m);
    *out_value = dup_string(v.str());
  });
}

int impdiff_expr_requires_float(const impdiff_expr* e) {
  return e && requires_float(*e->e) ? 1 : 0;
}

impdiff_status impdiff_config_new(const impdiff_expr* g, impdiff_mode mode, const char* const* x,
                                  const char* const* y, size_t count, double residual_tol,
                                  impdiff_config** out_config) {
  return guarded([&] {
    require(g && x && y && out_config, "null argument");
    Mode m = resolve_mode(mode, g->e.get(), {x, y}, {count, count});
    double tol = residual_tol > 0.0 ? residual_tol : 1e-10;
    KnotConfiguration cfg =
        make_knot_configuration(g->e, parse_list(x, count, m), parse_list(y, count, m), m, tol);
    *out_config = new impdiff_config{g->e, std::move(cfg)};
  });
}

void impdiff_config_free(impdiff_config* c) { delete c; }

int impdiff_config_order(const impdiff_config* c) { return c ? c->cfg.order() : -1; }

impdiff_mode impdiff_config_mode(const impdiff_config* c) {
  if (!c) return IMPDIFF_MODE_AUTO;
  return c->cfg.mode == Mode::Rational ? IMPDIFF_MODE_RATIONAL : IMPDIFF_MODE_FLOAT;
}

impdiff_status impdiff_config_residual(const impdiff_config* c, size_t knot, char** out_value) {
  return guarded([&] {
    require(c && out_value, "null argument");
    if (knot >= c->cfg.residuals.size()) fail(ErrorCode::IndexOutOfRange, "knot out of range");
    *out_value = dup_string(c->cfg.residuals[knot].str());
  });
}

impdiff_status impdiff_implicit_dd(impdiff_config* c, impdiff_method method, char** out_value,
                                   unsigned long long* out_partitions) {
  return guarded([&] {
    require(c && out_value, "null argument");
    GridProvider provider(c->g, c->cfg);
    ImplicitEngine engine(provider, c->cfg.order());
    if (method == IMPDIFF_METHOD_MAIN) {
      EngineResult r = engine.main_dd();
      *out_value = dup_string(r.value.str());
      if (out_partitions) *out_partitions = r.partitions_used;
    } else {
      Scalar v = engine.recursive_dd();
      *out_value = dup_string(v.str());
      if (out_partitions) *out_partitions = 0;
    }
  });
}

impdiff_status impdiff_chain_rule_residual(impdiff_config* c, char** out_value,
                                           char** out_scale) {
  return guarded([&] {
    require(c && out_value, "null argument");
    GridProvider provider(c->g, c->cfg);
    ImplicitEngine engine(provider, c->cfg.order());
    const KnotConfiguration& cfg = c->cfg;
    auto window = [&cfg](int a, int b) {
      std::vector<Scalar> k(cfg.x.begin() + a, cfg.x.begin() + b + 1);
      std::vector<Scalar> v(cfg.y.begin() + a, cfg.y.begin() + b + 1);
      return univariate_dd(k, v);
    };
    ChainRuleResult r = engine.chain_rule(window);
    *out_value = dup_string(r.value.str());
    if (out_scale) *out_scale = dup_string(r.max_abs_term.str());
  });
}

impdiff_status impdiff_solve_branch(const impdiff_expr* g, const double* x, size_t count,
                                    const double* seeds, size_t seed_count, double tol,
                                    int max_iter, double jump_guard, const double* bracket,
                                    double* out_y) {
  return guarded([&] {
    require(g && x && seeds && out_y, "null argument");
    BranchSeed seed;
    seed.seeds.assign(seeds, seeds + seed_count);
    if (tol > 0.0) seed.residual_tol = tol;
    if (max_iter > 0) seed.max_iterations = max_iter;
    seed.jump_guard = jump_guard;
    if (bracket) seed.bisection_bracket = std::make_pair(bracket[0], bracket[1]);
    BranchSolution sol = solve_branch(g->e, std::span<const double>(x, count), seed);
    for (size_t i = 0; i < count; ++i) out_y[i] = sol.y[i];
  });
}

impdiff_status impdiff_univariate_dd(impdiff_mode mode, const char* const* knots,
                                     const char* const* values, size_t count, char** out_value) {
  return guarded([&] {
    require(knots && values && out_value, "null argument");
    Mode m = resolve_mode(mode, nullptr, {knots, values}, {count, count});
    UnivariateSamples s{parse_list(knots, count, m), parse_list(values, count, m)};
    *out_value = dup_string(univariate_dd(s).str());
  });
}

impdiff_status impdiff_inverse_dd(const impdiff_expr* h, impdiff_mode mode, const char* const* x,
                                  const char* const* y, size_t count, char** out_value) {
  return guarded([&] {
    require(h && x && y && out_value, "null argument");
    require(!contains_var(*h->e, Var::X), "h must be a function of y only");
    Mode m = resolve_mode(mode, h->e.get(), {x, y}, {count, count});
    // y is implicitly defined by g(x, y) = x - h(y).
    ExprPtr g = Expr::sub(Expr::variable(Var::X), h->e);
    KnotConfiguration cfg =
        make_knot_configuration(g, parse_list(x, count, m), parse_list(y, count, m), m, 1e-10);
    ExprHSource source(h->e, cfg.y, m);
    *out_value = dup_string(inverse_dd(source, cfg).str());
  });
}

impdiff_status impdiff_quotient_dd(const impdiff_expr* p, const impdiff_expr* q,
                                   impdiff_mode mode, const char* const* x, size_t count,
                                   char** out_value) {
  return guarded([&] {
    require(p && q && x && out_value, "null argument");
    require(!contains_var(*p->e, Var::Y) && !contains_var(*q->e, Var::Y),
            "P and Q must be functions of x only");
    Mode m = resolve_mode(mode, p->e.get(), {x}, {count});
    if (m == Mode::Rational && requires_float(*q->e)) m = Mode::Float;
    std::vector<Scalar> knots = parse_list(x, count, m);
    for (size_t i = 1; i < knots.size(); ++i) {
      Scalar d = knots[i] - knots[i - 1];
      if (d.is_negative() || d.is_zero())
        fail(ErrorCode::InvalidArgument, "x knots must be strictly increasing");
    }
    std::vector<Scalar> pv, qv;
    for (const Scalar& k : knots) {
      pv.push_back(eval(*p->e, k, k, m));
      qv.push_back(eval(*q->e, k, k, m));
    }
    *out_value = dup_string(quotient_dd(pv, qv, knots).str());
  });
}

impdiff_status impdiff_confluent_derivative(const impdiff_expr* g, const char* x0, const char* y0,
                                            int order, impdiff_mode mode, char** out_value) {
  return guarded([&] {
    require(g && x0 && y0 && out_value, "null argument");
    const char* const xs[] = {x0};
    const char* const ys[] = {y0};
    Mode m = resolve_mode(mode, g->e.get(), {xs, ys}, {1, 1});
    Scalar v = confluent_derivative(g->e, parse_scalar(x0, m), parse_scalar(y0, m), order, m);
    *out_value = dup_string(v.str());
  });
}

impdiff_status impdiff_partition_iter_new(int n, int triangulations_only,
                                          impdiff_partition_iter** out_iter) {
  return guarded([&] {
    require(out_iter != nullptr, "null argument");
    *out_iter = new impdiff_partition_iter{PartitionEnumerator(n, triangulations_only != 0)};
  });
}

impdiff_status impdiff_partition_iter_next(impdiff_partition_iter* it, char** out_faces_json) {
  t_last_error.clear();
  t_last_position = -1;
  try {
    if (!it || !out_faces_json) {
      t_last_error = "null argument";
      return IMPDIFF_ERR_INVALID_ARGUMENT;
    }
    auto part = it->en.next();
    if (!part) {
      *out_faces_json = nullptr;
      return IMPDIFF_END;
    }
    std::string json = "{\"faces\": [";
    for (size_t f = 0; f < part->faces.size(); ++f) {
      if (f) json += ",";
      json += "[";
      for (size_t v = 0; v < part->faces[f].size(); ++v) {
        if (v) json += ",";
        json += std::to_string(part->faces[f][v]);
      }
      json += "]";
    }
    json += "]}";
    *out_faces_json = dup_string(json);
    return IMPDIFF_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return IMPDIFF_ERR_INTERNAL;
  }
}

void impdiff_partition_iter_free(impdiff_partition_iter* it) { delete it; }

impdiff_status impdiff_partition_count(int n, int triangulations_only,
                                       unsigned long long* out_count) {
  return guarded([&] {
    require(out_count != nullptr, "null argument");
    *out_count = count_partitions(n, triangulations_only != 0);
  });
}

impdiff_status impdiff_value_sub(impdiff_mode mode, const char* a, const char* b,
                                 char** out_value) {
  return guarded([&] {
    require(a && b && out_value, "null argument");
    const char* const as[] = {a};
    const char* const bs[] = {b};
    Mode m = resolve_mode(mode, nullptr, {as, bs}, {1, 1});
    Scalar v = parse_scalar(a, m) - parse_scalar(b, m);
    *out_value = dup_string(v.str());
  });
}

}  // extern "C"
