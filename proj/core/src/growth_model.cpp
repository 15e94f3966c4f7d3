#include "dmdl/growth_model.hpp"

#include <cmath>
#include <stdexcept>

namespace dmdl {

namespace {

void check_cut_two_sided(std::size_t cut, std::size_t n) {
  if (cut < 2 || cut + 2 > n) {
    throw std::invalid_argument("cut leaves a segment shorter than 2");
  }
}

}  // namespace

LogLinearFit fit_loglinear(std::span<const double> log_values,
                           std::int64_t t0) {
  const std::size_t m = log_values.size();
  if (m < 2) {
    throw std::invalid_argument("need at least two points to fit a rate");
  }

  double mean_t = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_t += static_cast<double>(t0 + static_cast<std::int64_t>(i));
    mean_y += log_values[i];
  }
  mean_t /= static_cast<double>(m);
  mean_y /= static_cast<double>(m);

  double stt = 0.0;
  double sty = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dt =
        static_cast<double>(t0 + static_cast<std::int64_t>(i)) - mean_t;
    stt += dt * dt;
    sty += dt * (log_values[i] - mean_y);
  }

  LogLinearFit fit;
  fit.r = sty / stt;
  fit.log_c0 = mean_y - fit.r * mean_t;
  fit.residuals.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = static_cast<double>(t0 + static_cast<std::int64_t>(i));
    fit.residuals[i] = log_values[i] - (fit.r * t + fit.log_c0);
    fit.sse += fit.residuals[i] * fit.residuals[i];
  }
  return fit;
}

namespace {

// Codelength of the residuals of a fresh rate fit on [first, first+count),
// with absolute time origin `t0`. The regression coefficients are not
// charged: only the residual vector is encoded.
double residual_codelength(std::span<const double> log_values,
                           std::size_t first, std::size_t count,
                           std::int64_t t0, const GaussianNmlConfig& cfg) {
  const LogLinearFit fit =
      fit_loglinear(log_values.subspan(first, count), t0);
  return nml_codelength(std::span<const double>(fit.residuals), cfg);
}

}  // namespace

double residual_dmdl0(std::span<const double> log_values, std::size_t cut,
                      const GaussianNmlConfig& cfg) {
  const std::size_t n = log_values.size();
  check_cut_two_sided(cut, n);
  const double whole = residual_codelength(log_values, 0, n, 0, cfg);
  const double left = residual_codelength(log_values, 0, cut, 0, cfg);
  const double right =
      residual_codelength(log_values, cut, n - cut,
                          static_cast<std::int64_t>(cut), cfg);
  return (whole - left - right) / static_cast<double>(n);
}

double residual_dmdl1(std::span<const double> log_values, std::size_t cut,
                      const GaussianNmlConfig& cfg) {
  const std::size_t n = log_values.size();
  if (cut < 2 || cut + 3 > n) {
    throw std::invalid_argument("cut leaves a segment shorter than 2");
  }
  return residual_dmdl0(log_values, cut + 1, cfg) -
         residual_dmdl0(log_values, cut, cfg);
}

double residual_dmdl2(std::span<const double> log_values, std::size_t cut,
                      const GaussianNmlConfig& cfg) {
  const std::size_t n = log_values.size();
  if (cut < 3 || cut + 3 > n) {
    throw std::invalid_argument("cut leaves a segment shorter than 2");
  }
  return residual_dmdl1(log_values, cut, cfg) -
         residual_dmdl1(log_values, cut - 1, cfg);
}

int compare_growth(std::span<const double> log_values, std::size_t cut) {
  const std::size_t n = log_values.size();
  check_cut_two_sided(cut, n);
  const LogLinearFit left = fit_loglinear(log_values.subspan(0, cut), 0);
  const LogLinearFit right =
      fit_loglinear(log_values.subspan(cut, n - cut),
                    static_cast<std::int64_t>(cut));
  if (right.r > left.r) return 1;
  if (right.r < left.r) return -1;
  return 0;
}

std::vector<double> cumulative_from_daily(std::span<const double> daily) {
  std::vector<double> out;
  out.reserve(daily.size());
  double total = 0.0;
  for (const double v : daily) {
    total += v;
    out.push_back(total);
  }
  return out;
}

std::vector<double> log_cumulative(std::span<const double> cumulative) {
  std::size_t first = 0;
  while (first < cumulative.size() && cumulative[first] <= 0.0) {
    ++first;
  }
  if (first == cumulative.size()) {
    throw std::invalid_argument("no cases");
  }
  std::vector<double> out;
  out.reserve(cumulative.size() - first);
  for (std::size_t i = first; i < cumulative.size(); ++i) {
    if (cumulative[i] <= 0.0) {
      throw std::invalid_argument(
          "cumulative series decreases to zero after onset");
    }
    out.push_back(std::log(cumulative[i]));
  }
  return out;
}

}  // namespace dmdl
