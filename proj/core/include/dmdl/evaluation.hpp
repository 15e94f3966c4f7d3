#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dmdl/nml_gaussian.hpp"

namespace dmdl {

/// Configuration of the benefit / false-alarm sweep used to score a
/// detector's raw statistic against known change locations.
struct EvalConfig {
  /// Credit horizon T: an alarm within T steps of a change earns
  /// 1 - d/T, otherwise nothing (and counts as a false alarm).
  double horizon = 100.0;
  std::vector<double> change_points;
  /// Thresholds to sweep, descending. Empty means "derive a grid of
  /// grid_size quantiles from the scores".
  std::vector<double> beta_grid;
  std::size_t grid_size = 200;
};

/// 1 - d/horizon for d = distance to the nearest change when d < horizon,
/// else 0. Empty change list gives 0.
double benefit(double t, std::span<const double> change_points,
               double horizon);

/// Unique score quantiles at grid_size evenly spaced probabilities,
/// descending. Quantiles use the "take the lower order statistic"
/// convention: index = floor(q * (m - 1)).
std::vector<double> quantile_grid(std::span<const double> scores,
                                  std::size_t grid_size);

/// Sum of benefits over flagged steps.
double total_benefit(std::span<const double> times,
                     std::span<const std::uint8_t> alarms,
                     const EvalConfig& cfg);

/// Number of flagged steps with zero benefit.
std::size_t false_alarm_count(std::span<const double> times,
                              std::span<const std::uint8_t> alarms,
                              const EvalConfig& cfg);

/// One row of the threshold sweep: alarms are the steps with
/// score > beta (strictly).
struct SweepPoint {
  double beta = 0.0;
  double total_benefit = 0.0;
  std::size_t false_alarms = 0;
};

/// Point of the normalized benefit-vs-false-alarm curve.
struct RocPoint {
  double far = 0.0;      ///< false alarms / max false alarms
  double benefit = 0.0;  ///< total benefit / max total benefit
};

struct AucResult {
  std::vector<SweepPoint> sweep;  ///< per beta, in sweep (descending) order
  std::vector<RocPoint> points;   ///< sorted curve, endpoints extended
  double sup_benefit = 0.0;
  std::size_t sup_false_alarms = 0;
  double auc = 0.0;
};

/// Area under the normalized benefit curve as the threshold sweeps the
/// grid. Degenerate cases: no threshold earns any benefit -> 0; some
/// benefit but never a false alarm -> the best normalized benefit.
AucResult auc_benefit(std::span<const double> times,
                      std::span<const double> scores, const EvalConfig& cfg);

/// KL divergence KL(N(mu1, sigma1^2) || N(mu2, sigma2^2)). Throws on a
/// nonpositive sigma.
double kl_gaussian(double mu1, double sigma1, double mu2, double sigma2);

struct MonteCarloResult {
  double rate = 0.0;   ///< fraction of trials where the split test fired
  double bound = 0.0;  ///< exp(-n * (epsilon - log_complexity/n))
  std::size_t positives = 0;
  std::size_t trials = 0;
};

/// Type-I error rate of the order-0 test on pure noise: draws `trials`
/// standard normal windows of length n and counts how often the
/// per-symbol saving at `cut` exceeds epsilon. Requires trials >= 1000
/// and epsilon large enough that the theoretical bound is below 1;
/// otherwise throws ("vacuous bound").
MonteCarloResult montecarlo_type1(std::size_t n, std::size_t cut,
                                  double epsilon, std::size_t trials,
                                  const GaussianNmlConfig& cfg,
                                  std::uint64_t seed);

}  // namespace dmdl
