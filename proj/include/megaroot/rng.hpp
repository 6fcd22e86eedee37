#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace megaroot {

/// splitmix64 step (Steele/Lea/Flood mixing constants).  Used everywhere a
/// reproducible stream is needed so results regenerate exactly across
/// platforms; std::random distributions are not portable bit-for-bit.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return splitmix64(state_); }

  /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  /// Uniform by area in the closed unit disk: r = sqrt(u), theta = 2*pi*v.
  std::complex<double> next_in_disk() {
    const double r = std::sqrt(next_unit());
    const double theta = 6.283185307179586476925286766559 * next_unit();
    return std::polar(r, theta);
  }

  /// Point on the unit circle.
  std::complex<double> next_on_circle() {
    return std::polar(1.0, 6.283185307179586476925286766559 * next_unit());
  }

 private:
  std::uint64_t state_;
};

/// Stable mix of several seed words into one stream seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
  std::uint64_t s = a;
  (void)splitmix64(s);
  s ^= b + 0x9E3779B97F4A7C15ull + (s << 6) + (s >> 2);
  (void)splitmix64(s);
  s ^= c + 0x9E3779B97F4A7C15ull + (s << 6) + (s >> 2);
  return s;
}

}  // namespace megaroot
