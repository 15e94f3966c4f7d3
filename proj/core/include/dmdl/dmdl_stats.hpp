#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "dmdl/nml_gaussian.hpp"

namespace dmdl {

/// Scores at one cut inside a window. `cut` counts the points in the left
/// segment. Admissible ranges (n = window length):
///   order 0: 2 <= cut <= n-2;  order 1 additionally cut <= n-3;
///   order 2 additionally cut >= 3.
struct CutScores {
  std::size_t cut = 0;
  double psi0 = 0.0;
  std::optional<double> psi1;
  std::optional<double> psi2;
  std::size_t n = 0;
};

/// Confidence parameters of the alarm thresholds, one per order.
struct ThresholdConfig {
  double delta = 0.05;
  double delta1 = 0.05;
  double delta2 = 0.05;
  int d = 2;
};

/// Per-symbol codelength saving from splitting `window` at `cut`:
///   (L(window) - L(left) - L(right)) / n.
/// Throws on n < 4 or an inadmissible cut.
double dmdl0(std::span<const double> window, std::size_t cut,
             const GaussianNmlConfig& cfg);

/// First discrete difference over the cut index:
/// dmdl0(window, cut+1) - dmdl0(window, cut), same code path for both terms.
double dmdl1(std::span<const double> window, std::size_t cut,
             const GaussianNmlConfig& cfg);

/// Second discrete difference over the cut index.
double dmdl2(std::span<const double> window, std::size_t cut,
             const GaussianNmlConfig& cfg);

/// Test statistics: positive value accepts the change/change-sign
/// hypothesis at significance budget epsilon.
double h0(std::span<const double> window, std::size_t cut, double epsilon,
          const GaussianNmlConfig& cfg);

/// Codelength form of the first-order test; equals dmdl1 - epsilon (the
/// two-segment encodings around the shifted cut share the whole-window
/// term, which cancels).
double h1(std::span<const double> window, std::size_t cut, double epsilon,
          const GaussianNmlConfig& cfg);

/// Three-segment form: left [0, cut-1), middle [cut-1, cut+1) (exactly two
/// points), right [cut+1, n). Needs 3 <= cut <= n-3.
double h2(std::span<const double> window, std::size_t cut, double epsilon,
          const GaussianNmlConfig& cfg);

/// Alarm thresholds for the window-scaled statistics w * psi:
///   order 0: (2 + d/2 + delta) * log w + log(1/delta)
///   order 1: d * log(w/2) + log(1/delta1)
///   order 2: 2 * (d * log(w/2) + log(1/delta2))
/// Require w >= 4.
double threshold0(std::size_t w, const ThresholdConfig& cfg);
double threshold1(std::size_t w, const ThresholdConfig& cfg);
double threshold2(std::size_t w, const ThresholdConfig& cfg);

/// Exhaustive scan over the order's admissible cuts; returns the cut
/// maximizing that order's statistic (ties break to the smallest index)
/// with all three scores evaluated there where defined.
CutScores best_cut(std::span<const double> window, int order,
                   const GaussianNmlConfig& cfg);

}  // namespace dmdl
