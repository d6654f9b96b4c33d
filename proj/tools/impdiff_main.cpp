// impdiff command-line front end. Talks to the library exclusively through
// the public C API; every subcommand prints one JSON document on stdout
// (partitions streams one JSON line per partition).
//
// Exit codes: 0 success, 2 input errors (syntax, bad knots, bad flags),
// 3 numerical failures (singular pivots, no convergence, domain errors).

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "impdiff/impdiff.h"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

class CliFailure : public std::runtime_error {
 public:
  CliFailure(int exit_code, std::string status, std::string message, long position = -1)
      : std::runtime_error(message), exit_code(exit_code), status(std::move(status)),
        position(position) {}
  int exit_code;
  std::string status;
  long position;
};

const char* status_name(impdiff_status s) {
  switch (s) {
    case IMPDIFF_OK: return "ok";
    case IMPDIFF_END: return "end";
    case IMPDIFF_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case IMPDIFF_ERR_LENGTH_MISMATCH: return "length_mismatch";
    case IMPDIFF_ERR_PARTIAL_CONFLUENCY: return "partial_confluency";
    case IMPDIFF_ERR_INDEX_OUT_OF_RANGE: return "index_out_of_range";
    case IMPDIFF_ERR_SYNTAX: return "syntax_error";
    case IMPDIFF_ERR_DOMAIN: return "domain_error";
    case IMPDIFF_ERR_MODE: return "mode_error";
    case IMPDIFF_ERR_SINGULAR_PIVOT: return "singular_pivot";
    case IMPDIFF_ERR_NO_CONVERGENCE: return "no_convergence";
    case IMPDIFF_ERR_DERIVATIVE_VANISHED: return "derivative_vanished";
    case IMPDIFF_ERR_BRANCH_JUMP: return "branch_jump";
    case IMPDIFF_ERR_ZERO_DENOMINATOR: return "zero_denominator";
    case IMPDIFF_ERR_RESIDUAL: return "residual_violation";
    case IMPDIFF_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

int exit_code_for(impdiff_status s) {
  switch (s) {
    case IMPDIFF_ERR_INVALID_ARGUMENT:
    case IMPDIFF_ERR_LENGTH_MISMATCH:
    case IMPDIFF_ERR_PARTIAL_CONFLUENCY:
    case IMPDIFF_ERR_INDEX_OUT_OF_RANGE:
    case IMPDIFF_ERR_SYNTAX:
    case IMPDIFF_ERR_MODE:
    case IMPDIFF_ERR_RESIDUAL:
      return 2;
    default:
      return 3;
  }
}

void check(impdiff_status s) {
  if (s == IMPDIFF_OK) return;
  throw CliFailure(exit_code_for(s), status_name(s), impdiff_last_error(),
                   impdiff_last_error_position());
}

// Owned C string from the library.
struct LibString {
  char* ptr = nullptr;
  ~LibString() { impdiff_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct ExprHandle {
  impdiff_expr* ptr = nullptr;
  ~ExprHandle() { impdiff_expr_free(ptr); }
};

struct ConfigHandle {
  impdiff_config* ptr = nullptr;
  ~ConfigHandle() { impdiff_config_free(ptr); }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      items.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current += c;
    }
  }
  items.push_back(current);
  for (const std::string& item : items)
    if (item.empty())
      throw CliFailure(2, "invalid_argument", "empty entry in list '" + text + "'");
  return items;
}

std::vector<const char*> c_view(const std::vector<std::string>& items) {
  std::vector<const char*> out;
  for (const std::string& s : items) out.push_back(s.c_str());
  return out;
}

double to_double(const std::string& text) {
  auto parse = [](const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw CliFailure(2, "invalid_argument", "malformed number '" + s + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return parse(text);
  return parse(text.substr(0, slash)) / parse(text.substr(slash + 1));
}

std::string format_double(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, res.ptr);
}

bool list_requires_float(const std::vector<std::string>& items) {
  for (const std::string& s : items)
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos)
      return true;
  return false;
}

impdiff_mode mode_from_flag(const std::string& flag) {
  if (flag == "auto") return IMPDIFF_MODE_AUTO;
  if (flag == "rational") return IMPDIFF_MODE_RATIONAL;
  if (flag == "float") return IMPDIFF_MODE_FLOAT;
  throw CliFailure(2, "invalid_argument", "unknown mode '" + flag + "'");
}

const char* mode_name_of(impdiff_mode m) {
  return m == IMPDIFF_MODE_RATIONAL ? "rational" : "float";
}

impdiff_expr* parse_expression(const std::string& text) {
  impdiff_expr* e = nullptr;
  check(impdiff_expr_parse(text.c_str(), &e));
  return e;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void emit(const json& doc, int indent) {
  if (indent > 0)
    std::cout << doc.dump(indent) << "\n";
  else
    std::cout << doc.dump() << "\n";
}

// Shared per-subcommand option state.
struct CommonOptions {
  std::string mode = "auto";
  double tolerance = 0.0;  // 0 = library defaults
  int json_indent = 2;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->set_help_flag("--help", "Print this help message and exit");
  cmd->add_option("--mode", opts.mode, "Arithmetic mode: auto|rational|float")
      ->default_val("auto");
  cmd->add_option("--tolerance", opts.tolerance,
                  "Residual/agreement tolerance (0 = library default)");
  cmd->add_option("--json-indent", opts.json_indent, "JSON indent width (0 = compact)")
      ->default_val(2);
}

// ---------------------------------------------------------------------------

int run_implicit(const std::string& g_text, const std::string& x_text, const std::string& y_text,
                 const std::string& guess_text, std::string method, const CommonOptions& opts) {
  Timer timer;
  ExprHandle g{parse_expression(g_text)};
  std::vector<std::string> x_items = split_list(x_text);
  if (x_items.size() < 2)
    throw CliFailure(2, "invalid_argument",
                     "at least two knots required (divided differences of order n >= 1)");
  int n = static_cast<int>(x_items.size()) - 1;

  impdiff_mode mode = mode_from_flag(opts.mode);
  std::vector<std::string> y_items;
  json warnings = json::array();

  if (!y_text.empty()) {
    y_items = split_list(y_text);
  } else if (!guess_text.empty()) {
    if (mode == IMPDIFF_MODE_RATIONAL)
      throw CliFailure(2, "mode_error", "--y0-guess solves numerically; use --y for rational mode");
    mode = IMPDIFF_MODE_FLOAT;
    std::vector<std::string> seed_items = split_list(guess_text);
    if (seed_items.size() != 1 && seed_items.size() != x_items.size())
      throw CliFailure(2, "invalid_argument", "--y0-guess needs one seed or one per knot");
    std::vector<double> xs, seeds;
    for (const std::string& s : x_items) xs.push_back(to_double(s));
    for (const std::string& s : seed_items) seeds.push_back(to_double(s));
    std::vector<double> ys(xs.size());
    check(impdiff_solve_branch(g.ptr, xs.data(), xs.size(), seeds.data(), seeds.size(),
                               /*tol=*/0.0, /*max_iter=*/0, /*jump_guard=*/0.0,
                               /*bracket=*/nullptr, ys.data()));
    for (double v : ys) y_items.push_back(format_double(v));
  } else {
    throw CliFailure(2, "invalid_argument", "one of --y or --y0-guess is required");
  }

  if (method.empty()) {
    if (n <= 7) {
      method = "both";
    } else {
      method = "recursive";
      warnings.push_back("order " + std::to_string(n) +
                         ": partition count grows too fast, defaulting to the recursive "
                         "route; pass --method to override");
    }
  }
  if (method != "main" && method != "recursive" && method != "both")
    throw CliFailure(2, "invalid_argument", "unknown method '" + method + "'");
  if (n == 1 && method != "main") method = "recursive";  // partition route needs n >= 2

  ConfigHandle config;
  check(impdiff_config_new(g.ptr, mode, c_view(x_items).data(), c_view(y_items).data(),
                           x_items.size(), opts.tolerance, &config.ptr));
  impdiff_mode actual_mode = impdiff_config_mode(config.ptr);

  json values = json::object();
  json doc;
  doc["command"] = "implicit";
  doc["mode"] = mode_name_of(actual_mode);
  doc["g"] = g_text;
  doc["order"] = n;
  doc["x"] = x_items;
  doc["y"] = y_items;
  doc["method"] = method;

  std::string main_value, recursive_value;
  unsigned long long partitions = 0;
  if (method == "main" || method == "both") {
    LibString v;
    check(impdiff_implicit_dd(config.ptr, IMPDIFF_METHOD_MAIN, &v.ptr, &partitions));
    main_value = v.str();
    values["main"] = main_value;
  }
  if (method == "recursive" || method == "both") {
    LibString v;
    check(impdiff_implicit_dd(config.ptr, IMPDIFF_METHOD_RECURSIVE, &v.ptr, nullptr));
    recursive_value = v.str();
    values["recursive"] = recursive_value;
  }
  doc["values"] = values;
  doc["value"] = main_value.empty() ? recursive_value : main_value;
  if (method == "both") {
    LibString delta;
    check(impdiff_value_sub(actual_mode, main_value.c_str(), recursive_value.c_str(),
                            &delta.ptr));
    doc["deltas"] = {{"main_minus_recursive", delta.str()}};
  }
  if (method != "recursive") doc["partitions_used"] = partitions;

  json residuals = json::array();
  for (size_t i = 0; i < x_items.size(); ++i) {
    LibString r;
    check(impdiff_config_residual(config.ptr, i, &r.ptr));
    residuals.push_back(r.str());
  }
  doc["residuals"] = residuals;
  if (!warnings.empty()) doc["warnings"] = warnings;
  doc["timing_ms"] = timer.ms();
  emit(doc, opts.json_indent);
  return 0;
}

int run_inverse(const std::string& h_text, const std::string& x_text, const std::string& y_text,
                const std::string& seed_text, const CommonOptions& opts) {
  Timer timer;
  ExprHandle h{parse_expression(h_text)};
  std::vector<std::string> x_items = split_list(x_text);
  if (x_items.size() < 3)
    throw CliFailure(2, "invalid_argument", "the inverse formula needs order n >= 2");

  impdiff_mode mode = mode_from_flag(opts.mode);
  std::vector<std::string> y_items;
  if (!y_text.empty()) {
    y_items = split_list(y_text);
  } else {
    // Solve x = h(y) by branch following on g(x, y) = x - h(y).
    if (mode == IMPDIFF_MODE_RATIONAL)
      throw CliFailure(2, "mode_error", "--seed solves numerically; use --y for rational mode");
    mode = IMPDIFF_MODE_FLOAT;
    ExprHandle g{parse_expression("x - (" + h_text + ")")};
    double seed = seed_text.empty() ? 1.0 : to_double(seed_text);
    std::vector<double> xs;
    for (const std::string& s : x_items) xs.push_back(to_double(s));
    std::vector<double> ys(xs.size());
    check(impdiff_solve_branch(g.ptr, xs.data(), xs.size(), &seed, 1, 0.0, 0, 0.0, nullptr,
                               ys.data()));
    for (double v : ys) y_items.push_back(format_double(v));
  }

  LibString value;
  check(impdiff_inverse_dd(h.ptr, mode, c_view(x_items).data(), c_view(y_items).data(),
                           x_items.size(), &value.ptr));

  bool is_rational = mode != IMPDIFF_MODE_FLOAT && !impdiff_expr_requires_float(h.ptr) &&
                     !list_requires_float(x_items) && !list_requires_float(y_items);
  json doc;
  doc["command"] = "inverse";
  doc["mode"] = is_rational ? "rational" : "float";
  doc["h"] = h_text;
  doc["order"] = static_cast<int>(x_items.size()) - 1;
  doc["x"] = x_items;
  doc["y"] = y_items;
  doc["value"] = value.str();
  doc["timing_ms"] = timer.ms();
  emit(doc, opts.json_indent);
  return 0;
}

int run_quotient(const std::string& p_text, const std::string& q_text, const std::string& x_text,
                 const CommonOptions& opts) {
  Timer timer;
  ExprHandle p{parse_expression(p_text)};
  ExprHandle q{parse_expression(q_text)};
  std::vector<std::string> x_items = split_list(x_text);
  impdiff_mode mode = mode_from_flag(opts.mode);

  LibString value;
  check(impdiff_quotient_dd(p.ptr, q.ptr, mode, c_view(x_items).data(), x_items.size(),
                            &value.ptr));

  bool is_rational = mode != IMPDIFF_MODE_FLOAT && !impdiff_expr_requires_float(p.ptr) &&
                     !impdiff_expr_requires_float(q.ptr) && !list_requires_float(x_items);
  json doc;
  doc["command"] = "quotient";
  doc["mode"] = is_rational ? "rational" : "float";
  doc["p"] = p_text;
  doc["q"] = q_text;
  doc["order"] = static_cast<int>(x_items.size()) - 1;
  doc["x"] = x_items;
  doc["value"] = value.str();
  doc["timing_ms"] = timer.ms();
  emit(doc, opts.json_indent);
  return 0;
}

int run_derivs(const std::string& g_text, const std::string& at_text, int order,
               const CommonOptions& opts) {
  Timer timer;
  ExprHandle g{parse_expression(g_text)};
  std::vector<std::string> at = split_list(at_text);
  if (at.size() != 2)
    throw CliFailure(2, "invalid_argument", "--at expects 'X,Y'");

  impdiff_mode mode = mode_from_flag(opts.mode);
  LibString value;
  check(impdiff_confluent_derivative(g.ptr, at[0].c_str(), at[1].c_str(), order, mode,
                                     &value.ptr));

  bool is_rational = mode != IMPDIFF_MODE_FLOAT && !impdiff_expr_requires_float(g.ptr) &&
                     !list_requires_float(at);
  json doc;
  doc["command"] = "derivs";
  doc["mode"] = is_rational ? "rational" : "float";
  doc["g"] = g_text;
  doc["at"] = {{"x", at[0]}, {"y", at[1]}};
  doc["order"] = order;
  doc["value"] = value.str();
  doc["timing_ms"] = timer.ms();
  emit(doc, opts.json_indent);
  return 0;
}

int run_partitions(int n, bool triangulations, bool count_only, const CommonOptions& opts) {
  if (count_only) {
    unsigned long long count = 0;
    check(impdiff_partition_count(n, triangulations ? 1 : 0, &count));
    json doc;
    doc["count"] = count;
    emit(doc, opts.json_indent);
    return 0;
  }
  impdiff_partition_iter* it = nullptr;
  check(impdiff_partition_iter_new(n, triangulations ? 1 : 0, &it));
  while (true) {
    LibString line;
    impdiff_status s = impdiff_partition_iter_next(it, &line.ptr);
    if (s == IMPDIFF_END) break;
    if (s != IMPDIFF_OK) {
      impdiff_partition_iter_free(it);
      check(s);
    }
    std::cout << line.str() << "\n";
  }
  impdiff_partition_iter_free(it);
  return 0;
}

int run_verify(const std::string& g_text, const std::string& x_text, double seed, int n_max,
               const CommonOptions& opts) {
  Timer timer;
  ExprHandle g{parse_expression(g_text)};
  std::vector<std::string> x_items = split_list(x_text);
  if (x_items.size() < 3)
    throw CliFailure(2, "invalid_argument", "verify needs at least three knots (n >= 2)");

  std::vector<double> xs;
  for (const std::string& s : x_items) xs.push_back(to_double(s));
  std::vector<double> ys(xs.size());
  check(impdiff_solve_branch(g.ptr, xs.data(), xs.size(), &seed, 1, 0.0, 0, 0.0, nullptr,
                             ys.data()));

  double tol = opts.tolerance > 0.0 ? opts.tolerance : 1e-8;
  int top = static_cast<int>(xs.size()) - 1;
  if (n_max > 0) top = std::min(top, n_max);

  json rows = json::array();
  bool all_agree = true;
  for (int n = 2; n <= top; ++n) {
    std::vector<std::string> x_prefix(x_items.begin(), x_items.begin() + n + 1);
    std::vector<std::string> y_prefix;
    for (int i = 0; i <= n; ++i) y_prefix.push_back(format_double(ys[i]));

    ConfigHandle config;
    check(impdiff_config_new(g.ptr, IMPDIFF_MODE_FLOAT, c_view(x_prefix).data(),
                             c_view(y_prefix).data(), x_prefix.size(), opts.tolerance,
                             &config.ptr));
    LibString main_v, rec_v, oracle_v, chain_v, chain_scale;
    unsigned long long partitions = 0;
    check(impdiff_implicit_dd(config.ptr, IMPDIFF_METHOD_MAIN, &main_v.ptr, &partitions));
    check(impdiff_implicit_dd(config.ptr, IMPDIFF_METHOD_RECURSIVE, &rec_v.ptr, nullptr));
    check(impdiff_univariate_dd(IMPDIFF_MODE_FLOAT, c_view(x_prefix).data(),
                                c_view(y_prefix).data(), x_prefix.size(), &oracle_v.ptr));
    check(impdiff_chain_rule_residual(config.ptr, &chain_v.ptr, &chain_scale.ptr));

    double main_d = to_double(main_v.str());
    double rec_d = to_double(rec_v.str());
    double oracle_d = to_double(oracle_v.str());
    double scale = std::max(1.0, std::fabs(oracle_d));
    double max_delta =
        std::max(std::fabs(main_d - oracle_d), std::fabs(rec_d - oracle_d));
    bool agrees = max_delta <= tol * scale;
    all_agree = all_agree && agrees;

    json row;
    row["n"] = n;
    row["main"] = main_v.str();
    row["recursive"] = rec_v.str();
    row["oracle"] = oracle_v.str();
    row["partitions_used"] = partitions;
    row["max_abs_delta"] = format_double(max_delta);
    row["chain_rule_residual"] = chain_v.str();
    row["agrees"] = agrees;
    rows.push_back(row);
  }

  json doc;
  doc["command"] = "verify";
  doc["mode"] = "float";
  doc["g"] = g_text;
  doc["x"] = x_items;
  doc["seed"] = seed;
  doc["tolerance"] = tol;
  doc["rows"] = rows;
  doc["all_agree"] = all_agree;
  doc["timing_ms"] = timer.ms();
  emit(doc, opts.json_indent);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divided differences of implicitly defined functions"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  CommonOptions implicit_opts, inverse_opts, quotient_opts, derivs_opts, partitions_opts,
      verify_opts;

  auto* implicit_cmd =
      app.add_subcommand("implicit", "[x_0,...,x_n]y for y implicitly defined by g(x, y) = 0");
  std::string g_text, x_text, y_text, guess_text, method;
  implicit_cmd->add_option("--g", g_text, "Expression g(x, y)")->required();
  implicit_cmd->add_option("--x", x_text, "Comma-separated knots")->required();
  implicit_cmd->add_option("--y", y_text, "Matching y values (exact mode friendly)");
  implicit_cmd->add_option("--y0-guess", guess_text, "Newton seed(s) for branch solving");
  implicit_cmd->add_option("--method", method, "main|recursive|both (default: both for n <= 7)");
  add_common(implicit_cmd, implicit_opts);

  auto* inverse_cmd = app.add_subcommand("inverse", "[x_0,...,x_n]y for y = h^{-1}(x)");
  std::string h_text, inv_x, inv_y, inv_seed;
  inverse_cmd->add_option("--h", h_text, "Expression h(y)")->required();
  inverse_cmd->add_option("--x", inv_x, "Comma-separated knots")->required();
  inverse_cmd->add_option("--y", inv_y, "Matching y values (x_i = h(y_i))");
  inverse_cmd->add_option("--seed", inv_seed, "Newton seed for solving x = h(y)");
  add_common(inverse_cmd, inverse_opts);

  auto* quotient_cmd = app.add_subcommand("quotient", "[x_0,...,x_n](P/Q) by the quotient rule");
  std::string p_text, q_text, quo_x;
  quotient_cmd->add_option("--p", p_text, "Numerator P(x)")->required();
  quotient_cmd->add_option("--q", q_text, "Denominator Q(x)")->required();
  quotient_cmd->add_option("--x", quo_x, "Comma-separated knots")->required();
  add_common(quotient_cmd, quotient_opts);

  auto* derivs_cmd = app.add_subcommand("derivs", "y', y'' or y''' at a point of g(x, y) = 0");
  std::string dg_text, at_text;
  int order = 1;
  derivs_cmd->add_option("--g", dg_text, "Expression g(x, y)")->required();
  derivs_cmd->add_option("--at", at_text, "Point 'X,Y' with g(X, Y) = 0")->required();
  derivs_cmd->add_option("--order", order, "Derivative order 1..3")->required();
  add_common(derivs_cmd, derivs_opts);

  auto* partitions_cmd =
      app.add_subcommand("partitions", "Enumerate polygon partitions (one JSON line each)");
  int n = 0;
  bool triangulations = false, count_only = false;
  partitions_cmd->add_option("--n", n, "Polygon order (vertices 0..n)")->required();
  partitions_cmd->add_flag("--triangulations", triangulations, "Only all-triangle partitions");
  partitions_cmd->add_flag("--count-only", count_only, "Print only the count");
  add_common(partitions_cmd, partitions_opts);

  auto* verify_cmd =
      app.add_subcommand("verify", "Cross-check both formula routes against Newton solves");
  std::string vg_text, vx_text;
  double vseed = 1.0;
  int n_max = 0;
  verify_cmd->add_option("--g", vg_text, "Expression g(x, y)")->required();
  verify_cmd->add_option("--x", vx_text, "Comma-separated knots")->required();
  verify_cmd->add_option("--seed", vseed, "Newton seed for the branch")->required();
  verify_cmd->add_option("--n-max", n_max, "Cap on the divided-difference order");
  add_common(verify_cmd, verify_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (implicit_cmd->parsed())
      return run_implicit(g_text, x_text, y_text, guess_text, method, implicit_opts);
    if (inverse_cmd->parsed()) return run_inverse(h_text, inv_x, inv_y, inv_seed, inverse_opts);
    if (quotient_cmd->parsed()) return run_quotient(p_text, q_text, quo_x, quotient_opts);
    if (derivs_cmd->parsed()) return run_derivs(dg_text, at_text, order, derivs_opts);
    if (partitions_cmd->parsed())
      return run_partitions(n, triangulations, count_only, partitions_opts);
    if (verify_cmd->parsed()) return run_verify(vg_text, vx_text, vseed, n_max, verify_opts);
  } catch (const CliFailure& e) {
    json doc;
    doc["error"] = {{"status", e.status}, {"message", e.what()}};
    if (e.position >= 0) doc["error"]["position"] = e.position;
    std::cout << doc.dump(2) << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    json doc;
    doc["error"] = {{"status", "internal_error"}, {"message", e.what()}};
    std::cout << doc.dump(2) << "\n";
    return 3;
  }
  return 2;
}
