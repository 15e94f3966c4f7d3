#include "dmdl/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmdl/rng.hpp"

namespace dmdl {

double SynthConfig::effective_amplitude() const {
  if (std::isnan(amplitude)) {
    return kind == SynthKind::mean ? 0.3 : 0.1;
  }
  return amplitude;
}

void SynthConfig::validate() const {
  if (spacing == 0) throw std::invalid_argument("spacing must be positive");
  if (ramp == 0) throw std::invalid_argument("ramp must be positive");
  if (num_changes == 0) {
    throw std::invalid_argument("num_changes must be positive");
  }
}

namespace {

// Sum of shift activations at time t, weighted by the decreasing level
// sizes (num_changes + 1 - i). Hard step: active strictly after the change
// point. Ramp: linear rise over `ramp` steps starting at the change point.
double shift_sum(std::size_t t, const SynthConfig& cfg) {
  double total = 0.0;
  for (std::size_t i = 1; i <= cfg.num_changes; ++i) {
    const double offset = static_cast<double>(t) -
                          static_cast<double>(cfg.spacing * i);
    double s;
    if (cfg.transition == Transition::abrupt) {
      s = offset > 0.0 ? 1.0 : 0.0;
    } else {
      s = std::clamp(offset / static_cast<double>(cfg.ramp), 0.0, 1.0);
    }
    total += static_cast<double>(cfg.num_changes + 1 - i) * s;
  }
  return total;
}

}  // namespace

double mean_at(std::size_t t, const SynthConfig& cfg) {
  if (cfg.kind != SynthKind::mean) return 0.0;
  cfg.validate();
  return cfg.effective_amplitude() * shift_sum(t, cfg);
}

double sigma_at(std::size_t t, const SynthConfig& cfg) {
  if (cfg.kind != SynthKind::variance) return 1.0;
  cfg.validate();
  return std::exp(cfg.effective_amplitude() * shift_sum(t, cfg));
}

std::vector<std::size_t> change_points(const SynthConfig& cfg) {
  cfg.validate();
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= cfg.num_changes; ++i) {
    const std::size_t at = cfg.spacing * i;
    if (at >= cfg.length) break;
    out.push_back(at);
  }
  return out;
}

SynthSeries generate(const SynthConfig& cfg) {
  cfg.validate();
  SynthSeries out;
  out.x.resize(cfg.length);
  out.truth.resize(cfg.length);
  out.change_points = change_points(cfg);

  Rng rng(cfg.seed);
  for (std::size_t t = 0; t < cfg.length; ++t) {
    if (cfg.kind == SynthKind::mean) {
      const double mu = mean_at(t, cfg);
      out.truth[t] = mu;
      out.x[t] = mu + rng.gaussian();
    } else {
      const double sigma = sigma_at(t, cfg);
      out.truth[t] = sigma;
      out.x[t] = sigma * rng.gaussian();
    }
  }
  return out;
}

}  // namespace dmdl
