#pragma once

#include <cstdint>
#include <span>

namespace geodid {

/// Point-equality tolerance in the native metric of every space.
inline constexpr double kPointTolerance = 1e-10;

/// Standard normal quantile. Rational approximation refined by one Halley
/// step against erfc; absolute error well below 1e-9 on (0, 1).
double normal_quantile(double p);

double normal_cdf(double x);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double compensated_sum(std::span<const double> xs) noexcept;

/// SplitMix64 finalizer, used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Uniform double on the open interval (0, 1) from 53 random bits.
template <class Engine>
double uniform_open01(Engine& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace geodid
