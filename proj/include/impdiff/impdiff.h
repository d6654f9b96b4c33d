/* impdiff — divided differences of implicitly defined functions.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns an
 * impdiff_status, with a human-readable message available from
 * impdiff_last_error() (thread-local, valid until the next library call on
 * the same thread).
 *
 * Numeric values cross the boundary as strings so that exact rational
 * results ("p/q") survive the trip; float results use shortest round-trip
 * decimal notation. Strings returned through char** out-parameters are owned
 * by the caller and must be released with impdiff_string_free().
 */

#ifndef IMPDIFF_IMPDIFF_H
#define IMPDIFF_IMPDIFF_H

#include <stddef.h>

#if defined(_WIN32)
#  define IMPDIFF_API __declspec(dllexport)
#else
#  define IMPDIFF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum impdiff_status {
  IMPDIFF_OK = 0,
  IMPDIFF_END = 1, /* iterator exhausted; not an error */
  IMPDIFF_ERR_INVALID_ARGUMENT = 2,
  IMPDIFF_ERR_LENGTH_MISMATCH = 3,
  IMPDIFF_ERR_PARTIAL_CONFLUENCY = 4,
  IMPDIFF_ERR_INDEX_OUT_OF_RANGE = 5,
  IMPDIFF_ERR_SYNTAX = 6,
  IMPDIFF_ERR_DOMAIN = 7,
  IMPDIFF_ERR_MODE = 8,
  IMPDIFF_ERR_SINGULAR_PIVOT = 9,
  IMPDIFF_ERR_NO_CONVERGENCE = 10,
  IMPDIFF_ERR_DERIVATIVE_VANISHED = 11,
  IMPDIFF_ERR_BRANCH_JUMP = 12,
  IMPDIFF_ERR_ZERO_DENOMINATOR = 13,
  IMPDIFF_ERR_RESIDUAL = 14,
  IMPDIFF_ERR_INTERNAL = 15
} impdiff_status;

typedef enum impdiff_mode {
  IMPDIFF_MODE_AUTO = 0,     /* rational unless something forces float */
  IMPDIFF_MODE_RATIONAL = 1, /* exact arithmetic */
  IMPDIFF_MODE_FLOAT = 2     /* IEEE double */
} impdiff_mode;

typedef enum impdiff_method {
  IMPDIFF_METHOD_MAIN = 0,     /* sum over polygon partitions */
  IMPDIFF_METHOD_RECURSIVE = 1 /* recursion on the (0, n) face */
} impdiff_method;

typedef struct impdiff_expr impdiff_expr;
typedef struct impdiff_config impdiff_config;
typedef struct impdiff_partition_iter impdiff_partition_iter;

IMPDIFF_API const char* impdiff_version(void);

/* Message for the most recent failing call on this thread ("" if none). */
IMPDIFF_API const char* impdiff_last_error(void);

/* Byte offset of the most recent syntax error, -1 otherwise. */
IMPDIFF_API long impdiff_last_error_position(void);

IMPDIFF_API void impdiff_string_free(char* s);

/* --- expressions ------------------------------------------------------- */

IMPDIFF_API impdiff_status impdiff_expr_parse(const char* text, impdiff_expr** out_expr);
IMPDIFF_API void impdiff_expr_free(impdiff_expr* e);
IMPDIFF_API impdiff_status impdiff_expr_print(const impdiff_expr* e, char** out_text);
/* var is 'x' or 'y'. */
IMPDIFF_API impdiff_status impdiff_expr_diff(const impdiff_expr* e, char var,
                                             impdiff_expr** out_expr);
IMPDIFF_API impdiff_status impdiff_expr_eval(const impdiff_expr* e, const char* x, const char* y,
                                             impdiff_mode mode, char** out_value);
/* 1 if the expression contains a transcendental call or decimal literal. */
IMPDIFF_API int impdiff_expr_requires_float(const impdiff_expr* e);

/* --- knot configurations ------------------------------------------------ */

/* x and y are arrays of `count` numeric strings; count = n + 1 >= 2.
 * residual_tol <= 0 selects the default (1e-10). Mode AUTO picks rational
 * when the expression and every knot allow it. */
IMPDIFF_API impdiff_status impdiff_config_new(const impdiff_expr* g, impdiff_mode mode,
                                              const char* const* x, const char* const* y,
                                              size_t count, double residual_tol,
                                              impdiff_config** out_config);
IMPDIFF_API void impdiff_config_free(impdiff_config* c);
IMPDIFF_API int impdiff_config_order(const impdiff_config* c);
IMPDIFF_API impdiff_mode impdiff_config_mode(const impdiff_config* c);
IMPDIFF_API impdiff_status impdiff_config_residual(const impdiff_config* c, size_t knot,
                                                   char** out_value);

/* --- divided differences of the implicit function ----------------------- */

/* [x_0,...,x_n]y by the requested route. out_partitions (may be NULL)
 * receives the number of partitions consumed by the MAIN route, 0 for the
 * recursive route. MAIN requires n >= 2. */
IMPDIFF_API impdiff_status impdiff_implicit_dd(impdiff_config* c, impdiff_method method,
                                               char** out_value,
                                               unsigned long long* out_partitions);

/* Chain-rule residual: evaluates the graph chain rule with window values
 * taken directly from the configuration's y knots. out_scale (may be NULL)
 * receives the largest summand magnitude. */
IMPDIFF_API impdiff_status impdiff_chain_rule_residual(impdiff_config* c, char** out_value,
                                                       char** out_scale);

/* --- oracle -------------------------------------------------------------- */

/* Newton branch following: solves g(x_i, y) = 0 for each knot. seeds has
 * seed_count entries (1 propagates knot to knot). bracket is NULL or
 * [lo, hi] for the bisection fallback. tol <= 0 selects 1e-13, max_iter <= 0
 * selects 50, jump_guard <= 0 disables the branch-jump check. */
IMPDIFF_API impdiff_status impdiff_solve_branch(const impdiff_expr* g, const double* x,
                                                size_t count, const double* seeds,
                                                size_t seed_count, double tol, int max_iter,
                                                double jump_guard, const double* bracket,
                                                double* out_y);

/* Univariate divided difference of explicit samples. */
IMPDIFF_API impdiff_status impdiff_univariate_dd(impdiff_mode mode, const char* const* knots,
                                                 const char* const* values, size_t count,
                                                 char** out_value);

/* --- closed-form specializations ----------------------------------------- */

/* [x_0,...,x_n]y for y = h^{-1}(x); x_i = h(y_i) must hold. */
IMPDIFF_API impdiff_status impdiff_inverse_dd(const impdiff_expr* h, impdiff_mode mode,
                                              const char* const* x, const char* const* y,
                                              size_t count, char** out_value);

/* [x_0,...,x_n](P/Q) from the quotient rule; p and q are expressions in x. */
IMPDIFF_API impdiff_status impdiff_quotient_dd(const impdiff_expr* p, const impdiff_expr* q,
                                               impdiff_mode mode, const char* const* x,
                                               size_t count, char** out_value);

/* y', y'' or y''' (order 1..3) at a point with g(x0, y0) = 0. */
IMPDIFF_API impdiff_status impdiff_confluent_derivative(const impdiff_expr* g, const char* x0,
                                                        const char* y0, int order,
                                                        impdiff_mode mode, char** out_value);

/* --- polygon partitions --------------------------------------------------- */

/* Streams partitions of the polygon 0..n in lexicographic order of the
 * sorted face list. Each call to next yields one partition as a JSON line
 * {"faces": [[0,1,2],[0,2,3]]} until IMPDIFF_END. */
IMPDIFF_API impdiff_status impdiff_partition_iter_new(int n, int triangulations_only,
                                                      impdiff_partition_iter** out_iter);
IMPDIFF_API impdiff_status impdiff_partition_iter_next(impdiff_partition_iter* it,
                                                       char** out_faces_json);
IMPDIFF_API void impdiff_partition_iter_free(impdiff_partition_iter* it);

IMPDIFF_API impdiff_status impdiff_partition_count(int n, int triangulations_only,
                                                   unsigned long long* out_count);

/* --- small value helpers --------------------------------------------------- */

/* out = a - b, computed in the given mode (for report deltas). */
IMPDIFF_API impdiff_status impdiff_value_sub(impdiff_mode mode, const char* a, const char* b,
                                             char** out_value);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IMPDIFF_IMPDIFF_H */
