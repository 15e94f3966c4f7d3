#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dmdl/nml_gaussian.hpp"

namespace dmdl {

/// Least-squares fit of log cumulative counts against time:
/// log C(t) = r*t + log_c0, residuals in input order.
struct LogLinearFit {
  double r = 0.0;       ///< growth rate per time step
  double log_c0 = 0.0;  ///< intercept at absolute time 0
  std::vector<double> residuals;
  double sse = 0.0;  ///< sum of squared residuals
};

/// Ordinary least squares of log_values against absolute time indices
/// t0, t0+1, ... Throws on fewer than two points.
LogLinearFit fit_loglinear(std::span<const double> log_values,
                           std::int64_t t0);

/// Per-symbol codelength saving from modeling the window as two independent
/// exponentials instead of one: each side of the cut (and the whole window)
/// gets its own regression, and the Gaussian codelength of the residual
/// vectors is compared:
///   (L(res_whole) - L(res_left) - L(res_right)) / n.
/// Regression coefficients themselves are not charged codelength.
double residual_dmdl0(std::span<const double> log_values, std::size_t cut,
                      const GaussianNmlConfig& cfg);

/// First/second discrete differences of residual_dmdl0 over the cut index.
double residual_dmdl1(std::span<const double> log_values, std::size_t cut,
                      const GaussianNmlConfig& cfg);
double residual_dmdl2(std::span<const double> log_values, std::size_t cut,
                      const GaussianNmlConfig& cfg);

/// Sign of the growth-rate change across the cut: +1 when the right
/// segment's fitted rate exceeds the left's, -1 when it is lower, 0 on an
/// exact tie.
int compare_growth(std::span<const double> log_values, std::size_t cut);

/// Running sum of daily counts.
std::vector<double> cumulative_from_daily(std::span<const double> daily);

/// log of the cumulative series after dropping the leading prefix where the
/// cumulative count is still zero. Throws std::invalid_argument("no cases")
/// when the whole series is zero.
std::vector<double> log_cumulative(std::span<const double> cumulative);

}  // namespace dmdl
