#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lotforge {

/// Deterministic draws on top of the standardized mt19937_64 stream. The
/// standard <random> distributions are implementation-defined, so every
/// transform is spelled out here; identical seeds give identical draws on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in (0, 1]; never zero, so logs are safe.
  double uniform01() {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Inclusive integer range.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  double normal(double mean, double sd) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Gamma with integer shape: sum of exponentials.
  double gamma_int(int shape) {
    double acc = 0.0;
    for (int i = 0; i < shape; ++i) acc -= std::log(uniform01());
    return acc;
  }

  /// Beta with small integer parameters via the gamma ratio.
  double beta(int alpha, int beta_param) {
    const double x = gamma_int(alpha);
    const double y = gamma_int(beta_param);
    return x / (x + y);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lotforge
