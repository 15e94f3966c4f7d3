#include "dmdl/calibration.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dmdl {

namespace {

double invert(double exponent) {
  // Nudge above the exact inversion so the strict ">" alarm comparison
  // includes the boundary, then clamp into (0, 0.99].
  double delta = std::exp(exponent) * (1.0 + 1e-12);
  if (delta > 0.99) delta = 0.99;
  if (delta <= 0.0) delta = std::numeric_limits<double>::min();
  return delta;
}

}  // namespace

CalibratedDeltas calibrate_deltas(std::span<const double> series,
                                  std::size_t warning_index,
                                  const DetectorConfig& cfg) {
  if (warning_index >= series.size()) {
    throw std::invalid_argument("warning index outside the series");
  }

  std::vector<StepInternals> internals;
  run_hierarchical(series, cfg, &internals);
  const StepInternals& step = internals[warning_index];
  if (!step.g1 || !step.g2) {
    throw std::invalid_argument("window too small at warning date");
  }

  const double d = cfg.thresholds.d;
  const double half_log = d * std::log(static_cast<double>(step.w) / 2.0);
  CalibratedDeltas out;
  out.delta1 = invert(half_log - *step.g1);
  out.delta2 = invert(half_log - *step.g2 / 2.0);
  return out;
}

}  // namespace dmdl
