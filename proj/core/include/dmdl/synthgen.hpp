#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace dmdl {

enum class SynthKind { mean, variance };
enum class Transition { abrupt, gradual };

/// Piecewise benchmark generator: a staircase of `num_changes` shifts of
/// decreasing size, applied to the mean (unit variance) or to the log
/// standard deviation (zero mean). Each shift is either a hard step or a
/// linear ramp of `ramp` steps.
struct SynthConfig {
  SynthKind kind = SynthKind::mean;
  Transition transition = Transition::abrupt;
  std::size_t length = 10000;
  std::uint64_t seed = 1;
  /// Per-level shift unit. NaN means "use the default for the kind":
  /// 0.3 for mean shifts, 0.1 for log-sigma shifts.
  double amplitude = std::numeric_limits<double>::quiet_NaN();
  std::size_t spacing = 1000;
  std::size_t ramp = 300;
  std::size_t num_changes = 9;

  /// amplitude with the NaN default resolved.
  double effective_amplitude() const;
  void validate() const;
};

struct SynthSeries {
  std::vector<double> x;
  /// True mean path (mean kind) or true sigma path (variance kind).
  std::vector<double> truth;
  std::vector<std::size_t> change_points;
};

/// True mean at time t (0 for the variance kind).
double mean_at(std::size_t t, const SynthConfig& cfg);

/// True standard deviation at time t (1 for the mean kind).
double sigma_at(std::size_t t, const SynthConfig& cfg);

/// Change locations spacing*i, i = 1..num_changes, truncated to < length.
std::vector<std::size_t> change_points(const SynthConfig& cfg);

/// Draw the series. Deterministic in cfg.seed.
SynthSeries generate(const SynthConfig& cfg);

}  // namespace dmdl
