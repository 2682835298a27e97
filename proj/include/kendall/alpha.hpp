#pragma once

#include <cmath>
#include <stdexcept>

namespace kendall {

// Convolution exponent. Fixed for one algebra instance; every transform,
// kernel and walk below is parameterized by it.
class Alpha {
 public:
  explicit Alpha(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0) {
      throw std::invalid_argument("alpha must be a positive finite real");
    }
  }

  double value() const { return value_; }

 private:
  double value_;
};

// pow specialized for the exponents that dominate the sampling hot path.
inline double pow_pos(double base, double exponent) {
  if (exponent == 1.0) return base;
  if (exponent == 2.0) return base * base;
  if (exponent == 0.5) return std::sqrt(base);
  return std::pow(base, exponent);
}

}  // namespace kendall
