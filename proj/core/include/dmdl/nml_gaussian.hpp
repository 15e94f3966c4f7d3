#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dmdl {

/// Hyperparameters of the bounded univariate Gaussian model class:
/// |mu| < mu_max and sigma in [sigma_min, sigma_max]. The bounds make the
/// class's normalizing constant finite; d is the parameter dimension.
struct GaussianNmlConfig {
  double mu_max = 1.0;
  double sigma_min = 0.005;
  double sigma_max = 100.0;
  int d = 2;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// Maximum-likelihood estimate of a segment, with sigma clamped into the
/// class bounds; `clamped` records whether clamping had to occur.
struct GaussianMle {
  double mu_hat = 0.0;
  double sigma_hat = 0.0;
  std::size_t n = 0;
  bool clamped = false;
};

/// Sufficient statistics of a segment — the O(1) fast path used by the
/// window scanners. sumsq is the raw (uncentered) second moment.
struct SegmentMoments {
  std::size_t n = 0;
  double sum = 0.0;
  double sumsq = 0.0;
};

/// Mean and clamped standard deviation of a segment (population variance).
/// Throws std::invalid_argument("empty segment") on an empty input.
GaussianMle gaussian_mle(std::span<const double> segment,
                         const GaussianNmlConfig& cfg);

/// log of the model class's normalizing constant for segment length n:
///   0.5*log(16*mu_max / (pi*sigma_min^2)) + (n/2)*log(n/(2e))
///   - lgamma((n-1)/2)
/// Natural logarithms. Requires n >= 2 (the Gamma argument must be
/// positive); throws "segment too short for NML normalizer" otherwise.
double log_parametric_complexity(std::size_t n, const GaussianNmlConfig& cfg);

/// Codelength of a segment under the class: -log p at the clamped MLE plus
/// the normalizer, i.e. (n/2)*log(2*pi*sigma^2) + sse/(2*sigma^2) + log C_n.
double nml_codelength(std::span<const double> segment,
                      const GaussianNmlConfig& cfg);

/// Moments fast path. log_cn must equal log_parametric_complexity(m.n, cfg);
/// the caller keeps that table so window scans stay O(1) per segment.
double nml_codelength(const SegmentMoments& m, double log_cn,
                      const GaussianNmlConfig& cfg);

/// Data-driven defaults used when a caller supplies no config:
/// mu_max = max(1, max|x|), sigma_min = 0.005 * s, sigma_max = 100 * s with
/// s = max(1, population std of the visible data). Resolved once per run.
GaussianNmlConfig resolve_default_config(std::span<const double> visible);

/// Lazily extended cache of log_parametric_complexity over n for one config.
/// Not thread-safe; intended as per-detector-instance state.
class LogComplexityTable {
 public:
  explicit LogComplexityTable(const GaussianNmlConfig& cfg) : cfg_(cfg) {}

  double operator()(std::size_t n) const;
  const GaussianNmlConfig& config() const { return cfg_; }

 private:
  GaussianNmlConfig cfg_;
  mutable std::vector<double> cache_;
};

}  // namespace dmdl
