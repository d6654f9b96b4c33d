#include "config.hpp"

#include <cmath>

namespace impdiff {

bool KnotConfiguration::confluent() const {
  for (size_t i = 1; i < x.size(); ++i)
    if (x[i] != x[0]) return false;
  return x.size() > 1;
}

KnotConfiguration make_knot_configuration(const ExprPtr& g, std::vector<Scalar> x,
                                          std::vector<Scalar> y, Mode mode,
                                          double residual_tol) {
  if (x.size() != y.size())
    fail(ErrorCode::LengthMismatch, "x and y lists differ in length");
  if (x.size() < 2)
    fail(ErrorCode::InvalidArgument, "at least two knots required (order n >= 1)");

  KnotConfiguration cfg;
  cfg.mode = mode;
  for (auto& v : x) cfg.x.push_back(v.to_mode(mode));
  for (auto& v : y) cfg.y.push_back(v.to_mode(mode));

  bool all_equal = true;
  for (size_t i = 1; i < cfg.x.size(); ++i)
    if (cfg.x[i] != cfg.x[0]) all_equal = false;

  if (all_equal) {
    for (size_t i = 1; i < cfg.y.size(); ++i)
      if (cfg.y[i] != cfg.y[0])
        fail(ErrorCode::InvalidArgument, "confluent configuration needs equal y values");
  } else {
    for (size_t i = 1; i < cfg.x.size(); ++i) {
      Scalar d = cfg.x[i] - cfg.x[i - 1];
      if (d.is_negative() || d.is_zero())
        fail(ErrorCode::InvalidArgument, "x knots must be strictly increasing");
    }
    for (size_t i = 0; i < cfg.y.size(); ++i)
      for (size_t j = i + 1; j < cfg.y.size(); ++j)
        if (cfg.y[i] == cfg.y[j])
          fail(ErrorCode::InvalidArgument,
               "y values must be pairwise distinct (grid-backed evaluation)");
  }

  for (size_t i = 0; i < cfg.x.size(); ++i) {
    Scalar r = eval(*g, cfg.x[i], cfg.y[i], mode);
    if (mode == Mode::Rational) {
      if (!r.is_zero())
        fail(ErrorCode::Residual,
             "knot " + std::to_string(i) + " does not solve g exactly: residual " + r.str());
    } else if (std::fabs(r.to_double()) > residual_tol) {
      fail(ErrorCode::Residual, "knot " + std::to_string(i) + " residual " +
                                    format_double(r.to_double()) + " exceeds tolerance " +
                                    format_double(residual_tol));
    }
    cfg.residuals.push_back(std::move(r));
  }
  return cfg;
}

}  // namespace impdiff
