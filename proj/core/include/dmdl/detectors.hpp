#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dmdl/dmdl_stats.hpp"
#include "dmdl/nml_gaussian.hpp"

namespace dmdl {

enum class Direction { none, up, down };
enum class DetectorMode { fixed, adaptive, hierarchical };

/// What a segment's codelength is computed from: the raw values under the
/// bounded Gaussian class, or the residuals of a per-segment exponential
/// (log-linear) rate fit.
enum class DataModel { gaussian_direct, exponential_residual };

/// Where the 1st/2nd-order statistics are read in hierarchical mode:
/// at each order's own maximizing cut, or at the 0th order's argmax.
enum class SignCut { per_order, zeroth_argmax };

const char* to_string(Direction v);
const char* to_string(DetectorMode v);
const char* to_string(DataModel v);
const char* to_string(SignCut v);

/// One output step of a detector. Raw scores are per-symbol savings; a
/// score is absent when the step's window is too short for that order.
/// norm* are filled by normalize_scores (retrospective min-max).
/// window_size is the size after any shrink triggered at this step.
/// direction is classified only in hierarchical mode, at alarm steps.
struct ScoreRecord {
  std::int64_t t = 0;
  std::optional<double> raw0, raw1, raw2;
  std::optional<double> norm0, norm1, norm2;
  bool alarm0 = false;
  bool alarm1 = false;
  bool alarm2 = false;
  std::size_t window_size = 0;
  Direction direction = Direction::none;
};

struct DetectorConfig {
  DetectorMode mode = DetectorMode::hierarchical;
  /// Half-window of the fixed-window detector (window = 2h points).
  std::size_t h = 100;
  ThresholdConfig thresholds;
  DataModel model = DataModel::gaussian_direct;
  /// Fixed-mode alarm threshold on the per-symbol raw scores.
  double beta = 0.0;
  /// Growing-window cap; 0 means unbounded. When the cap is hit the
  /// oldest points are dropped silently (no alarm).
  std::size_t max_window = 0;
  SignCut sign_cut = SignCut::per_order;
  /// Model-class bounds; absent means "resolve data-driven defaults from
  /// the full input once per run".
  std::optional<GaussianNmlConfig> nml;

  void validate() const;
};

/// Pre-shrink internals of one hierarchical step: the window-scaled
/// statistics g = w * psi at the selected cuts, exactly as compared
/// against the thresholds. Used to calibrate confidence parameters
/// around a known warning date.
struct StepInternals {
  std::size_t w = 0;
  std::optional<double> g0, g1, g2;
  std::optional<std::size_t> cut0, cut1, cut2;
};

/// Sliding fixed window of 2h points centered at each t in [h, T-h]:
/// order 0 scored at the center cut, orders 1/2 as discrete differences
/// around it (present only for h >= 3). alarm_a = (raw_a > beta). Output
/// has T - 2h + 1 records. Requires T >= 2h + 2.
std::vector<ScoreRecord> run_fixed(std::span<const double> series,
                                   const DetectorConfig& cfg);

/// Grows a window one point per step; when the max over admissible cuts
/// of w * psi^(order) exceeds the order's threshold, raises that order's
/// alarm and drops all data at or before the maximizing cut. At most one
/// alarm per step; scores are absent while the window is shorter than
/// the order's minimum. Empty input gives empty output.
std::vector<ScoreRecord> run_adaptive(std::span<const double> series,
                                      const DetectorConfig& cfg, int order);

/// Runs the 0th order adaptively (the only order that shrinks; alarm0
/// fires exactly when the window shrinks) while scoring the 1st and 2nd
/// orders within the current window each step. Directions are classified
/// at alarm steps by comparing segment means (gaussian_direct) or fitted
/// rates (exponential_residual) across the alarming cut, lowest alarming
/// order first. `internals`, when given, receives one entry per step.
std::vector<ScoreRecord> run_hierarchical(
    std::span<const double> series, const DetectorConfig& cfg,
    std::vector<StepInternals>* internals = nullptr);

/// Routes by cfg.mode; `order` applies to adaptive mode only.
std::vector<ScoreRecord> run_detector(std::span<const double> series,
                                      const DetectorConfig& cfg,
                                      int order = 0);

/// Retrospective per-order min-max normalization of the raw scores into
/// [0,1]; a constant raw sequence normalizes to 0. Absent raws stay
/// absent.
void normalize_scores(std::vector<ScoreRecord>& records);

/// The model-class bounds a run over `series` with `cfg` actually uses:
/// cfg.nml when set, else data-driven defaults resolved once from the
/// full input (for the residual model, from the residuals of one
/// whole-series rate fit).
GaussianNmlConfig effective_nml_config(std::span<const double> series,
                                       const DetectorConfig& cfg);

}  // namespace dmdl
