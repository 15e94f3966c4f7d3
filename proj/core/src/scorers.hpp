#pragma once

#include <memory>
#include <span>
#include <vector>

#include "dmdl/detectors.hpp"
#include "dmdl/nml_gaussian.hpp"

namespace dmdl::internal {

/// Codelength oracle over contiguous index ranges [a, b) of one fixed
/// series: O(1) per query after O(n) setup, so window scans stay linear
/// in the window length.
class SegmentScorer {
 public:
  virtual ~SegmentScorer() = default;

  std::size_t size() const { return n_; }

  /// Codelength of x[a..b) under the model, b - a >= 2.
  virtual double codelength(std::size_t a, std::size_t b) const = 0;

  /// Sign of the location (mean) or rate change across cut_abs within
  /// [a, b): +1 when the right side is higher, -1 lower, 0 exact tie.
  virtual int compare_sides(std::size_t a, std::size_t cut_abs,
                            std::size_t b) const = 0;

 protected:
  explicit SegmentScorer(std::size_t n) : n_(n) {}

  std::size_t n_;
};

/// Bounded Gaussian codelengths from prefix sums of x and x^2.
class GaussianScorer final : public SegmentScorer {
 public:
  GaussianScorer(std::span<const double> series,
                 const GaussianNmlConfig& cfg);

  double codelength(std::size_t a, std::size_t b) const override;
  int compare_sides(std::size_t a, std::size_t cut_abs,
                    std::size_t b) const override;

 private:
  LogComplexityTable table_;
  std::vector<double> px_;   // prefix sums of x
  std::vector<double> pxx_;  // prefix sums of x^2
};

/// Residual codelengths of per-segment rate fits, from prefix sums of y,
/// y^2 and i*y. The fit is refit on every queried segment (closed form);
/// only the residual vector is charged codelength.
class ResidualScorer final : public SegmentScorer {
 public:
  ResidualScorer(std::span<const double> log_values,
                 const GaussianNmlConfig& cfg);

  double codelength(std::size_t a, std::size_t b) const override;
  int compare_sides(std::size_t a, std::size_t cut_abs,
                    std::size_t b) const override;

 private:
  double residual_sse(std::size_t a, std::size_t b) const;
  double slope(std::size_t a, std::size_t b) const;

  LogComplexityTable table_;
  std::vector<double> py_;   // prefix sums of y
  std::vector<double> pyy_;  // prefix sums of y^2
  std::vector<double> piy_;  // prefix sums of i*y (absolute index i)
};

std::unique_ptr<SegmentScorer> make_scorer(std::span<const double> series,
                                           DataModel model,
                                           const GaussianNmlConfig& cfg);

/// The model-class bounds a detector run actually uses: the caller's, or
/// data-driven defaults resolved once from the full input (for the
/// residual model, from the residuals of one whole-series rate fit).
GaussianNmlConfig resolve_model_config(std::span<const double> series,
                                       const DetectorConfig& cfg);

}  // namespace dmdl::internal
