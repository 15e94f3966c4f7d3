#include "dmdl/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "dmdl/dmdl_stats.hpp"
#include "dmdl/rng.hpp"

namespace dmdl {

double benefit(double t, std::span<const double> change_points,
               double horizon) {
  if (horizon <= 0.0) throw std::invalid_argument("horizon must be positive");
  double d = std::numeric_limits<double>::infinity();
  for (const double cp : change_points) {
    d = std::min(d, std::abs(t - cp));
  }
  return d < horizon ? 1.0 - d / horizon : 0.0;
}

std::vector<double> quantile_grid(std::span<const double> scores,
                                  std::size_t grid_size) {
  if (scores.empty()) throw std::invalid_argument("empty score sequence");
  if (grid_size < 2) {
    throw std::invalid_argument("grid needs at least two levels");
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();

  std::vector<double> grid;
  grid.reserve(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double q = static_cast<double>(k) /
                     static_cast<double>(grid_size - 1);
    const auto idx = static_cast<std::size_t>(
        std::floor(q * static_cast<double>(m - 1)));
    const double v = sorted[idx];
    if (grid.empty() || v != grid.back()) grid.push_back(v);
  }
  std::reverse(grid.begin(), grid.end());
  return grid;
}

double total_benefit(std::span<const double> times,
                     std::span<const std::uint8_t> alarms,
                     const EvalConfig& cfg) {
  if (times.size() != alarms.size()) {
    throw std::invalid_argument("times and alarms differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (alarms[i]) total += benefit(times[i], cfg.change_points, cfg.horizon);
  }
  return total;
}

std::size_t false_alarm_count(std::span<const double> times,
                              std::span<const std::uint8_t> alarms,
                              const EvalConfig& cfg) {
  if (times.size() != alarms.size()) {
    throw std::invalid_argument("times and alarms differ in length");
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (alarms[i] &&
        benefit(times[i], cfg.change_points, cfg.horizon) == 0.0) {
      ++count;
    }
  }
  return count;
}

AucResult auc_benefit(std::span<const double> times,
                      std::span<const double> scores, const EvalConfig& cfg) {
  if (times.size() != scores.size()) {
    throw std::invalid_argument("times and scores differ in length");
  }
  if (scores.empty()) throw std::invalid_argument("empty score sequence");

  std::vector<double> ben(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    ben[i] = benefit(times[i], cfg.change_points, cfg.horizon);
  }

  const std::vector<double> betas =
      cfg.beta_grid.empty() ? quantile_grid(scores, cfg.grid_size)
                            : cfg.beta_grid;

  AucResult out;
  out.sweep.reserve(betas.size());
  for (const double beta : betas) {
    SweepPoint p;
    p.beta = beta;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] > beta) {
        p.total_benefit += ben[i];
        if (ben[i] == 0.0) ++p.false_alarms;
      }
    }
    out.sweep.push_back(p);
  }

  for (const SweepPoint& p : out.sweep) {
    out.sup_benefit = std::max(out.sup_benefit, p.total_benefit);
    out.sup_false_alarms = std::max(out.sup_false_alarms, p.false_alarms);
  }

  if (out.sup_benefit == 0.0) {
    out.auc = 0.0;
    return out;
  }
  if (out.sup_false_alarms == 0) {
    double best = 0.0;
    for (const SweepPoint& p : out.sweep) {
      best = std::max(best, p.total_benefit / out.sup_benefit);
    }
    out.auc = best;
    return out;
  }

  std::vector<std::pair<double, double>> pts;
  pts.reserve(out.sweep.size());
  for (const SweepPoint& p : out.sweep) {
    pts.emplace_back(
        static_cast<double>(p.false_alarms) /
            static_cast<double>(out.sup_false_alarms),
        p.total_benefit / out.sup_benefit);
  }
  std::sort(pts.begin(), pts.end());
  if (pts.front().first > 0.0) {
    pts.insert(pts.begin(), {0.0, pts.front().second});
  }
  if (pts.back().first < 1.0) {
    pts.push_back({1.0, pts.back().second});
  }

  out.points.reserve(pts.size());
  for (const auto& [far, b] : pts) out.points.push_back({far, b});

  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].first - pts[i - 1].first) *
            (pts[i].second + pts[i - 1].second) / 2.0;
  }
  out.auc = area;
  return out;
}

double kl_gaussian(double mu1, double sigma1, double mu2, double sigma2) {
  if (sigma1 <= 0.0 || sigma2 <= 0.0) {
    throw std::invalid_argument("sigma must be positive");
  }
  const double dm = mu1 - mu2;
  return std::log(sigma2 / sigma1) +
         (sigma1 * sigma1 + dm * dm) / (2.0 * sigma2 * sigma2) - 0.5;
}

MonteCarloResult montecarlo_type1(std::size_t n, std::size_t cut,
                                  double epsilon, std::size_t trials,
                                  const GaussianNmlConfig& cfg,
                                  std::uint64_t seed) {
  if (trials < 1000) {
    throw std::invalid_argument("at least 1000 trials required");
  }
  if (n < 4 || cut < 2 || cut + 2 > n) {
    throw std::invalid_argument("cut leaves a segment shorter than 2");
  }
  const double complexity_rate =
      log_parametric_complexity(n, cfg) / static_cast<double>(n);
  if (epsilon <= complexity_rate) {
    throw std::invalid_argument(
        "vacuous bound: epsilon must exceed the per-symbol complexity");
  }

  MonteCarloResult out;
  out.trials = trials;
  out.bound = std::exp(-static_cast<double>(n) *
                       (epsilon - complexity_rate));

  Rng rng(seed);
  std::vector<double> window(n);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (double& v : window) v = rng.gaussian();
    if (h0(window, cut, epsilon, cfg) > 0.0) ++out.positives;
  }
  out.rate = static_cast<double>(out.positives) /
             static_cast<double>(trials);
  return out;
}

}  // namespace dmdl
