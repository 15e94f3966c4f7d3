#include "dmdl/nml_gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dmdl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double clamp_sd(double sd, const GaussianNmlConfig& cfg, bool* clamped) {
  if (sd < cfg.sigma_min) {
    if (clamped) *clamped = true;
    return cfg.sigma_min;
  }
  if (sd > cfg.sigma_max) {
    if (clamped) *clamped = true;
    return cfg.sigma_max;
  }
  return sd;
}

}  // namespace

void GaussianNmlConfig::validate() const {
  if (!(mu_max > 0.0)) throw std::invalid_argument("mu_max must be positive");
  if (!(sigma_min > 0.0))
    throw std::invalid_argument("sigma_min must be positive");
  if (!(sigma_max > sigma_min))
    throw std::invalid_argument("sigma_max must exceed sigma_min");
  if (d != 2)
    throw std::invalid_argument("d must be 2 for the Gaussian class");
}

GaussianMle gaussian_mle(std::span<const double> segment,
                         const GaussianNmlConfig& cfg) {
  if (segment.empty()) throw std::invalid_argument("empty segment");
  const auto n = segment.size();
  double sum = 0.0;
  for (double v : segment) sum += v;
  const double mu = sum / static_cast<double>(n);
  double sse = 0.0;
  for (double v : segment) sse += (v - mu) * (v - mu);
  GaussianMle mle;
  mle.mu_hat = mu;
  mle.n = n;
  mle.sigma_hat =
      clamp_sd(std::sqrt(sse / static_cast<double>(n)), cfg, &mle.clamped);
  return mle;
}

double log_parametric_complexity(std::size_t n, const GaussianNmlConfig& cfg) {
  if (n < 2)
    throw std::invalid_argument("segment too short for NML normalizer");
  const double nd = static_cast<double>(n);
  return 0.5 * std::log(16.0 * cfg.mu_max /
                        (std::numbers::pi * cfg.sigma_min * cfg.sigma_min)) +
         0.5 * nd * std::log(nd / (2.0 * std::numbers::e)) -
         std::lgamma((nd - 1.0) / 2.0);
}

namespace {

/// Shared continuation: codelength from (n, sse) once the mean is removed.
double codelength_from_sse(std::size_t n, double sse, double log_cn,
                           const GaussianNmlConfig& cfg) {
  const double nd = static_cast<double>(n);
  double var = sse / nd;
  const double lo = cfg.sigma_min * cfg.sigma_min;
  const double hi = cfg.sigma_max * cfg.sigma_max;
  var = std::clamp(var, lo, hi);
  return 0.5 * nd * std::log(kTwoPi * var) + sse / (2.0 * var) + log_cn;
}

}  // namespace

double nml_codelength(std::span<const double> segment,
                      const GaussianNmlConfig& cfg) {
  const auto n = segment.size();
  if (n < 2)
    throw std::invalid_argument("segment too short for NML normalizer");
  double sum = 0.0;
  for (double v : segment) sum += v;
  const double mu = sum / static_cast<double>(n);
  double sse = 0.0;
  for (double v : segment) sse += (v - mu) * (v - mu);
  return codelength_from_sse(n, sse, log_parametric_complexity(n, cfg), cfg);
}

double nml_codelength(const SegmentMoments& m, double log_cn,
                      const GaussianNmlConfig& cfg) {
  if (m.n < 2)
    throw std::invalid_argument("segment too short for NML normalizer");
  const double nd = static_cast<double>(m.n);
  const double sse = std::max(0.0, m.sumsq - m.sum * m.sum / nd);
  return codelength_from_sse(m.n, sse, log_cn, cfg);
}

GaussianNmlConfig resolve_default_config(std::span<const double> visible) {
  if (visible.empty()) throw std::invalid_argument("empty segment");
  double max_abs = 0.0;
  double sum = 0.0;
  for (double v : visible) {
    max_abs = std::max(max_abs, std::abs(v));
    sum += v;
  }
  const double mu = sum / static_cast<double>(visible.size());
  double sse = 0.0;
  for (double v : visible) sse += (v - mu) * (v - mu);
  const double sd = std::sqrt(sse / static_cast<double>(visible.size()));
  const double scale = std::max(1.0, sd);
  GaussianNmlConfig cfg;
  cfg.mu_max = std::max(1.0, max_abs);
  cfg.sigma_min = 0.005 * scale;
  cfg.sigma_max = 100.0 * scale;
  cfg.d = 2;
  return cfg;
}

double LogComplexityTable::operator()(std::size_t n) const {
  if (n >= cache_.size())
    cache_.resize(n + 1, std::numeric_limits<double>::quiet_NaN());
  double& slot = cache_[n];
  if (std::isnan(slot)) slot = log_parametric_complexity(n, cfg_);
  return slot;
}

}  // namespace dmdl
