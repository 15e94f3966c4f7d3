#pragma once

#include <cstdint>
#include <random>

namespace dmdl {

/// Deterministic Gaussian sampler: Box-Muller over mt19937_64.
/// std::normal_distribution is implementation-defined, which would break
/// bit-identical regression fixtures across standard libraries; this class
/// produces the same stream everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform draw in (0, 1]; never returns 0, so log() stays finite.
  double uniform01() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1p-53;
  }

  /// Standard normal draw.
  double gaussian();

  double gaussian(double mu, double sigma) { return mu + sigma * gaussian(); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dmdl
