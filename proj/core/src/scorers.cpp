#include "scorers.hpp"

#include <algorithm>
#include <cmath>

#include "dmdl/growth_model.hpp"

namespace dmdl::internal {

GaussianScorer::GaussianScorer(std::span<const double> series,
                               const GaussianNmlConfig& cfg)
    : SegmentScorer(series.size()), table_(cfg) {
  px_.resize(n_ + 1, 0.0);
  pxx_.resize(n_ + 1, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    px_[i + 1] = px_[i] + series[i];
    pxx_[i + 1] = pxx_[i] + series[i] * series[i];
  }
}

double GaussianScorer::codelength(std::size_t a, std::size_t b) const {
  const SegmentMoments m{b - a, px_[b] - px_[a], pxx_[b] - pxx_[a]};
  return nml_codelength(m, table_(m.n), table_.config());
}

int GaussianScorer::compare_sides(std::size_t a, std::size_t cut_abs,
                                  std::size_t b) const {
  const double left = (px_[cut_abs] - px_[a]) /
                      static_cast<double>(cut_abs - a);
  const double right = (px_[b] - px_[cut_abs]) /
                       static_cast<double>(b - cut_abs);
  if (right > left) return 1;
  if (right < left) return -1;
  return 0;
}

ResidualScorer::ResidualScorer(std::span<const double> log_values,
                               const GaussianNmlConfig& cfg)
    : SegmentScorer(log_values.size()), table_(cfg) {
  py_.resize(n_ + 1, 0.0);
  pyy_.resize(n_ + 1, 0.0);
  piy_.resize(n_ + 1, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    py_[i + 1] = py_[i] + log_values[i];
    pyy_[i + 1] = pyy_[i] + log_values[i] * log_values[i];
    piy_[i + 1] = piy_[i] + static_cast<double>(i) * log_values[i];
  }
}

double ResidualScorer::residual_sse(std::size_t a, std::size_t b) const {
  const auto m = static_cast<double>(b - a);
  const double sy = py_[b] - py_[a];
  const double syy = pyy_[b] - pyy_[a];
  const double siy = piy_[b] - piy_[a];

  const double mean_i = (static_cast<double>(a) +
                         static_cast<double>(b) - 1.0) / 2.0;
  const double sty = siy - mean_i * sy;          // centered cross moment
  const double stt = m * (m * m - 1.0) / 12.0;   // variance of a..b-1
  const double syy_c = syy - sy * sy / m;
  return std::max(syy_c - sty * sty / stt, 0.0);
}

double ResidualScorer::slope(std::size_t a, std::size_t b) const {
  const auto m = static_cast<double>(b - a);
  const double sy = py_[b] - py_[a];
  const double siy = piy_[b] - piy_[a];
  const double mean_i = (static_cast<double>(a) +
                         static_cast<double>(b) - 1.0) / 2.0;
  const double sty = siy - mean_i * sy;
  const double stt = m * (m * m - 1.0) / 12.0;
  return sty / stt;
}

double ResidualScorer::codelength(std::size_t a, std::size_t b) const {
  // OLS residuals have zero sum, so {n, 0, sse} are their exact moments.
  const SegmentMoments m{b - a, 0.0, residual_sse(a, b)};
  return nml_codelength(m, table_(m.n), table_.config());
}

int ResidualScorer::compare_sides(std::size_t a, std::size_t cut_abs,
                                  std::size_t b) const {
  const double left = slope(a, cut_abs);
  const double right = slope(cut_abs, b);
  if (right > left) return 1;
  if (right < left) return -1;
  return 0;
}

std::unique_ptr<SegmentScorer> make_scorer(std::span<const double> series,
                                           DataModel model,
                                           const GaussianNmlConfig& cfg) {
  if (model == DataModel::gaussian_direct) {
    return std::make_unique<GaussianScorer>(series, cfg);
  }
  return std::make_unique<ResidualScorer>(series, cfg);
}

GaussianNmlConfig resolve_model_config(std::span<const double> series,
                                       const DetectorConfig& cfg) {
  if (cfg.nml) {
    cfg.nml->validate();
    return *cfg.nml;
  }
  if (cfg.model == DataModel::exponential_residual && series.size() >= 2) {
    const LogLinearFit fit = fit_loglinear(series, 0);
    return resolve_default_config(fit.residuals);
  }
  return resolve_default_config(series);
}

}  // namespace dmdl::internal
