#include "dmdl/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "scorers.hpp"

namespace dmdl {

const char* to_string(Direction v) {
  switch (v) {
    case Direction::up:
      return "up";
    case Direction::down:
      return "down";
    default:
      return "none";
  }
}

const char* to_string(DetectorMode v) {
  switch (v) {
    case DetectorMode::fixed:
      return "fixed";
    case DetectorMode::adaptive:
      return "adaptive";
    default:
      return "hierarchical";
  }
}

const char* to_string(DataModel v) {
  return v == DataModel::gaussian_direct ? "gaussian" : "exponential";
}

const char* to_string(SignCut v) {
  return v == SignCut::per_order ? "per_order" : "zeroth_argmax";
}

void DetectorConfig::validate() const {
  if (h < 2) throw std::invalid_argument("half-window must be at least 2");
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  if (max_window != 0 && max_window < 4) {
    throw std::invalid_argument("max_window below the minimum window length");
  }
  auto check_delta = [](double v, const char* name) {
    if (!(v > 0.0) || !(v < 1.0)) {
      throw std::invalid_argument(std::string(name) +
                                  " must lie strictly between 0 and 1");
    }
  };
  check_delta(thresholds.delta, "delta");
  check_delta(thresholds.delta1, "delta1");
  check_delta(thresholds.delta2, "delta2");
  if (thresholds.d < 1) {
    throw std::invalid_argument("parameter dimension must be positive");
  }
  if (nml) nml->validate();
}

namespace {

using internal::SegmentScorer;

// Total codelength saving of every admissible split of [a, b):
// g[c - 2] = L(a,b) - L(a,a+c) - L(a+c,b) for cut c in [2, w-2]. This is
// the window-scaled statistic w * psi0(c); first and second differences
// over c give w * psi1 and w * psi2.
void g_profile(const SegmentScorer& scorer, std::size_t a, std::size_t b,
               std::vector<double>& g) {
  const std::size_t w = b - a;
  g.clear();
  g.reserve(w - 3);
  const double whole = scorer.codelength(a, b);
  for (std::size_t c = 2; c + 2 <= w; ++c) {
    g.push_back(whole - scorer.codelength(a, a + c) -
                scorer.codelength(a + c, b));
  }
}

struct BestCut {
  double g = -std::numeric_limits<double>::infinity();  // w * psi
  std::size_t cut = 0;
};

// Argmax over the profile; ties break to the smallest cut.
BestCut best_order0(const std::vector<double>& g) {
  BestCut out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > out.g) {
      out.g = g[i];
      out.cut = i + 2;
    }
  }
  return out;
}

// First difference g(c+1) - g(c), admissible for c in [2, w-3] (w >= 5).
BestCut best_order1(const std::vector<double>& g) {
  BestCut out;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double v = g[i + 1] - g[i];
    if (v > out.g) {
      out.g = v;
      out.cut = i + 2;
    }
  }
  return out;
}

// Second difference g(c+1) - 2g(c) + g(c-1), c in [3, w-3] (w >= 6).
BestCut best_order2(const std::vector<double>& g) {
  BestCut out;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const double v = g[i + 1] - 2.0 * g[i] + g[i - 1];
    if (v > out.g) {
      out.g = v;
      out.cut = i + 2;
    }
  }
  return out;
}

constexpr std::size_t kMinWindow0 = 4;
constexpr std::size_t kMinWindow1 = 5;
constexpr std::size_t kMinWindow2 = 6;

std::size_t min_window_for(int order) {
  switch (order) {
    case 0:
      return kMinWindow0;
    case 1:
      return kMinWindow1;
    case 2:
      return kMinWindow2;
    default:
      throw std::invalid_argument("order must be 0, 1 or 2");
  }
}

double threshold_for(int order, std::size_t w, const ThresholdConfig& cfg) {
  switch (order) {
    case 0:
      return threshold0(w, cfg);
    case 1:
      return threshold1(w, cfg);
    default:
      return threshold2(w, cfg);
  }
}

Direction classify(const SegmentScorer& scorer, std::size_t a,
                   std::size_t cut_abs, std::size_t b) {
  const int sign = scorer.compare_sides(a, cut_abs, b);
  if (sign > 0) return Direction::up;
  if (sign < 0) return Direction::down;
  return Direction::none;
}

}  // namespace

std::vector<ScoreRecord> run_fixed(std::span<const double> series,
                                   const DetectorConfig& cfg) {
  cfg.validate();
  const std::size_t big_t = series.size();
  const std::size_t h = cfg.h;
  if (big_t < 2 * h + 2) {
    throw std::invalid_argument("series too short for the fixed window");
  }

  const GaussianNmlConfig nml = internal::resolve_model_config(series, cfg);
  const auto scorer = internal::make_scorer(series, cfg.model, nml);
  const auto n = static_cast<double>(2 * h);

  std::vector<ScoreRecord> records;
  records.reserve(big_t - 2 * h + 1);
  for (std::size_t t = h; t + h <= big_t; ++t) {
    const std::size_t a = t - h;
    const std::size_t b = t + h;
    const double whole = scorer->codelength(a, b);
    auto g_at = [&](std::size_t c) {
      return whole - scorer->codelength(a, a + c) -
             scorer->codelength(a + c, b);
    };

    ScoreRecord rec;
    rec.t = static_cast<std::int64_t>(t);
    rec.window_size = 2 * h;
    const double g_center = g_at(h);
    rec.raw0 = g_center / n;
    if (h >= 3) {
      const double g_prev = g_at(h - 1);
      const double g_next = g_at(h + 1);
      rec.raw1 = (g_next - g_center) / n;
      rec.raw2 = (g_next - 2.0 * g_center + g_prev) / n;
    }
    rec.alarm0 = rec.raw0 && *rec.raw0 > cfg.beta;
    rec.alarm1 = rec.raw1 && *rec.raw1 > cfg.beta;
    rec.alarm2 = rec.raw2 && *rec.raw2 > cfg.beta;
    records.push_back(rec);
  }
  return records;
}

std::vector<ScoreRecord> run_adaptive(std::span<const double> series,
                                      const DetectorConfig& cfg, int order) {
  cfg.validate();
  const std::size_t min_len = min_window_for(order);
  if (series.empty()) return {};

  const GaussianNmlConfig nml = internal::resolve_model_config(series, cfg);
  const auto scorer = internal::make_scorer(series, cfg.model, nml);

  std::vector<ScoreRecord> records;
  records.reserve(series.size());
  std::vector<double> g;
  std::size_t start = 0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    const std::size_t end = t + 1;
    if (cfg.max_window != 0 && end - start > cfg.max_window) {
      start = end - cfg.max_window;
    }
    const std::size_t w = end - start;

    ScoreRecord rec;
    rec.t = static_cast<std::int64_t>(t);
    if (w >= min_len) {
      g_profile(*scorer, start, end, g);
      BestCut best;
      switch (order) {
        case 0:
          best = best_order0(g);
          break;
        case 1:
          best = best_order1(g);
          break;
        default:
          best = best_order2(g);
          break;
      }
      const double raw = best.g / static_cast<double>(w);
      const bool alarm = best.g > threshold_for(order, w, cfg.thresholds);
      switch (order) {
        case 0:
          rec.raw0 = raw;
          rec.alarm0 = alarm;
          break;
        case 1:
          rec.raw1 = raw;
          rec.alarm1 = alarm;
          break;
        default:
          rec.raw2 = raw;
          rec.alarm2 = alarm;
          break;
      }
      if (alarm) start += best.cut;
    }
    rec.window_size = end - start;
    records.push_back(rec);
  }
  return records;
}

std::vector<ScoreRecord> run_hierarchical(
    std::span<const double> series, const DetectorConfig& cfg,
    std::vector<StepInternals>* internals) {
  cfg.validate();
  if (series.empty()) return {};

  const GaussianNmlConfig nml = internal::resolve_model_config(series, cfg);
  const auto scorer = internal::make_scorer(series, cfg.model, nml);

  std::vector<ScoreRecord> records;
  records.reserve(series.size());
  std::vector<double> g;
  std::size_t start = 0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    const std::size_t end = t + 1;
    if (cfg.max_window != 0 && end - start > cfg.max_window) {
      start = end - cfg.max_window;
    }
    const std::size_t w = end - start;

    ScoreRecord rec;
    rec.t = static_cast<std::int64_t>(t);
    StepInternals info;
    info.w = w;

    if (w >= kMinWindow0) {
      const std::size_t pre_start = start;
      g_profile(*scorer, start, end, g);
      const BestCut b0 = best_order0(g);
      rec.raw0 = b0.g / static_cast<double>(w);
      rec.alarm0 = b0.g > threshold0(w, cfg.thresholds);
      info.g0 = b0.g;
      info.cut0 = b0.cut;

      BestCut b1, b2;
      bool have1 = false;
      bool have2 = false;
      if (cfg.sign_cut == SignCut::per_order) {
        if (w >= kMinWindow1) {
          b1 = best_order1(g);
          have1 = true;
        }
        if (w >= kMinWindow2) {
          b2 = best_order2(g);
          have2 = true;
        }
      } else {
        // Read the differences at the 0th order's argmax when admissible.
        const std::size_t c = b0.cut;
        if (w >= kMinWindow1 && c + 3 <= w) {
          b1.cut = c;
          b1.g = g[c - 1] - g[c - 2];
          have1 = true;
        }
        if (w >= kMinWindow2 && c >= 3 && c + 3 <= w) {
          b2.cut = c;
          b2.g = g[c - 1] - 2.0 * g[c - 2] + g[c - 3];
          have2 = true;
        }
      }
      if (have1) {
        rec.raw1 = b1.g / static_cast<double>(w);
        rec.alarm1 = b1.g > threshold1(w, cfg.thresholds);
        info.g1 = b1.g;
        info.cut1 = b1.cut;
      }
      if (have2) {
        rec.raw2 = b2.g / static_cast<double>(w);
        rec.alarm2 = b2.g > threshold2(w, cfg.thresholds);
        info.g2 = b2.g;
        info.cut2 = b2.cut;
      }

      if (rec.alarm0 || rec.alarm1 || rec.alarm2) {
        const std::size_t dir_cut =
            rec.alarm0 ? b0.cut : (rec.alarm1 ? b1.cut : b2.cut);
        rec.direction = classify(*scorer, pre_start, pre_start + dir_cut, end);
      }
      if (rec.alarm0) start = pre_start + b0.cut;
    }

    rec.window_size = end - start;
    records.push_back(rec);
    if (internals) internals->push_back(info);
  }
  return records;
}

std::vector<ScoreRecord> run_detector(std::span<const double> series,
                                      const DetectorConfig& cfg, int order) {
  switch (cfg.mode) {
    case DetectorMode::fixed:
      return run_fixed(series, cfg);
    case DetectorMode::adaptive:
      return run_adaptive(series, cfg, order);
    default:
      return run_hierarchical(series, cfg);
  }
}

GaussianNmlConfig effective_nml_config(std::span<const double> series,
                                       const DetectorConfig& cfg) {
  return internal::resolve_model_config(series, cfg);
}

void normalize_scores(std::vector<ScoreRecord>& records) {
  auto normalize = [&](auto raw_member, auto norm_member) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const ScoreRecord& r : records) {
      if (const auto& v = r.*raw_member) {
        lo = std::min(lo, *v);
        hi = std::max(hi, *v);
        any = true;
      }
    }
    if (!any) return;
    for (ScoreRecord& r : records) {
      if (const auto& v = r.*raw_member) {
        r.*norm_member = hi > lo ? (*v - lo) / (hi - lo) : 0.0;
      }
    }
  };
  normalize(&ScoreRecord::raw0, &ScoreRecord::norm0);
  normalize(&ScoreRecord::raw1, &ScoreRecord::norm1);
  normalize(&ScoreRecord::raw2, &ScoreRecord::norm2);
}

}  // namespace dmdl
