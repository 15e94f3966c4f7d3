#pragma once

#include <cstddef>
#include <span>

#include "dmdl/detectors.hpp"

namespace dmdl {

struct CalibratedDeltas {
  double delta1 = 0.0;
  double delta2 = 0.0;
};

/// Inverts the 1st/2nd-order alarm thresholds around a known warning
/// step: with w and g = w * psi taken at that step of a hierarchical run
/// (before any shrink),
///   delta1 = exp(d*log(w/2) - g1),  delta2 = exp(d*log(w/2) - g2/2),
/// each clamped into (0, 0.99]. The result is nudged just above the exact
/// inversion so a rerun with these parameters fires at (not after) the
/// warning step under the strict alarm comparison.
/// Throws "window too small at warning date" when the warning step has
/// no 1st/2nd-order score.
CalibratedDeltas calibrate_deltas(std::span<const double> series,
                                  std::size_t warning_index,
                                  const DetectorConfig& cfg);

}  // namespace dmdl
