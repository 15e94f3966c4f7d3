#include "dmdl/dmdl_stats.hpp"

#include <cmath>
#include <stdexcept>

namespace dmdl {

namespace {

void check_window(std::span<const double> window, std::size_t min_len) {
  if (window.size() < min_len)
    throw std::invalid_argument("window too short");
}

void check_cut(std::size_t cut, std::size_t n) {
  if (cut < 2 || cut + 2 > n)
    throw std::invalid_argument("cut leaves a segment shorter than 2");
}

double seg(std::span<const double> window, std::size_t a, std::size_t b,
           const GaussianNmlConfig& cfg) {
  return nml_codelength(window.subspan(a, b - a), cfg);
}

}  // namespace

double dmdl0(std::span<const double> window, std::size_t cut,
             const GaussianNmlConfig& cfg) {
  const std::size_t n = window.size();
  check_window(window, 4);
  check_cut(cut, n);
  const double whole = nml_codelength(window, cfg);
  const double left = seg(window, 0, cut, cfg);
  const double right = seg(window, cut, n, cfg);
  return (whole - left - right) / static_cast<double>(n);
}

double dmdl1(std::span<const double> window, std::size_t cut,
             const GaussianNmlConfig& cfg) {
  const std::size_t n = window.size();
  check_window(window, 5);
  check_cut(cut, n);
  check_cut(cut + 1, n);
  return dmdl0(window, cut + 1, cfg) - dmdl0(window, cut, cfg);
}

double dmdl2(std::span<const double> window, std::size_t cut,
             const GaussianNmlConfig& cfg) {
  const std::size_t n = window.size();
  check_window(window, 6);
  if (cut < 3 || cut + 3 > n)
    throw std::invalid_argument("cut leaves a segment shorter than 2");
  return dmdl0(window, cut + 1, cfg) - 2.0 * dmdl0(window, cut, cfg) +
         dmdl0(window, cut - 1, cfg);
}

double h0(std::span<const double> window, std::size_t cut, double epsilon,
          const GaussianNmlConfig& cfg) {
  return dmdl0(window, cut, cfg) - epsilon;
}

double h1(std::span<const double> window, std::size_t cut, double epsilon,
          const GaussianNmlConfig& cfg) {
  const std::size_t n = window.size();
  check_window(window, 5);
  check_cut(cut, n);
  check_cut(cut + 1, n);
  const double at_cut = seg(window, 0, cut, cfg) + seg(window, cut, n, cfg);
  const double at_next =
      seg(window, 0, cut + 1, cfg) + seg(window, cut + 1, n, cfg);
  return (at_cut - at_next) / static_cast<double>(n) - epsilon;
}

double h2(std::span<const double> window, std::size_t cut, double epsilon,
          const GaussianNmlConfig& cfg) {
  const std::size_t n = window.size();
  check_window(window, 6);
  if (cut < 3 || cut + 3 > n)
    throw std::invalid_argument("cut leaves a segment shorter than 2");
  const double two_seg = seg(window, 0, cut, cfg) + seg(window, cut, n, cfg);
  const double three_seg = seg(window, 0, cut - 1, cfg) +
                           seg(window, cut - 1, cut + 1, cfg) +
                           seg(window, cut + 1, n, cfg);
  return (two_seg - three_seg) / static_cast<double>(n) - epsilon;
}

namespace {

void check_threshold_window(std::size_t w) {
  if (w < 4) throw std::invalid_argument("window too short");
}

}  // namespace

double threshold0(std::size_t w, const ThresholdConfig& cfg) {
  check_threshold_window(w);
  return (2.0 + cfg.d / 2.0 + cfg.delta) * std::log(static_cast<double>(w)) +
         std::log(1.0 / cfg.delta);
}

double threshold1(std::size_t w, const ThresholdConfig& cfg) {
  check_threshold_window(w);
  return cfg.d * std::log(static_cast<double>(w) / 2.0) +
         std::log(1.0 / cfg.delta1);
}

double threshold2(std::size_t w, const ThresholdConfig& cfg) {
  check_threshold_window(w);
  return 2.0 * (cfg.d * std::log(static_cast<double>(w) / 2.0) +
                std::log(1.0 / cfg.delta2));
}

CutScores best_cut(std::span<const double> window, int order,
                   const GaussianNmlConfig& cfg) {
  const std::size_t n = window.size();
  if (order < 0 || order > 2) throw std::invalid_argument("invalid order");
  const std::size_t min_len = order == 0 ? 4 : (order == 1 ? 5 : 6);
  check_window(window, min_len);
  const std::size_t lo = order == 2 ? 3 : 2;
  const std::size_t hi = order == 0 ? n - 2 : n - 3;  // inclusive

  auto stat = [&](std::size_t c) {
    switch (order) {
      case 0:
        return dmdl0(window, c, cfg);
      case 1:
        return dmdl1(window, c, cfg);
      default:
        return dmdl2(window, c, cfg);
    }
  };

  std::size_t best = lo;
  double best_value = stat(lo);
  for (std::size_t c = lo + 1; c <= hi; ++c) {
    const double v = stat(c);
    if (v > best_value) {
      best_value = v;
      best = c;
    }
  }

  CutScores out;
  out.cut = best;
  out.n = n;
  out.psi0 = dmdl0(window, best, cfg);
  if (best <= n - 3) out.psi1 = dmdl1(window, best, cfg);
  if (best >= 3 && best <= n - 3) out.psi2 = dmdl2(window, best, cfg);
  return out;
}

}  // namespace dmdl
