#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace megaroot {

/// Complex value represented as mantissa * 2^exponent.  The mantissa is kept
/// at unit scale (|mantissa| in [0.5, 2), normalize() lands it in [1, 2)), so
/// quantities like p(z) at degree 2^20 stay representable long after native
/// doubles would overflow around 2^1024.  Exponent arithmetic is exact.
struct ScaledComplex {
  std::complex<double> mantissa{0.0, 0.0};
  std::int64_t exponent = 0;
};

enum class RatioStatus { ok, divide_by_zero, overflow, underflow };

struct RatioResult {
  std::complex<double> value{0.0, 0.0};
  RatioStatus status = RatioStatus::ok;

  bool ok() const { return status == RatioStatus::ok; }
};

inline bool is_zero(const ScaledComplex& x) {
  return x.mantissa.real() == 0.0 && x.mantissa.imag() == 0.0;
}

/// Rescale so |mantissa| lies in [1, 2); zero canonicalizes to (0, 0).
/// Value is preserved (scaling is by a power of two).
inline ScaledComplex normalize(ScaledComplex x) {
  const double mag = std::abs(x.mantissa);
  if (mag == 0.0) return ScaledComplex{};
  int k = 0;
  std::frexp(mag, &k);  // mag = f * 2^k, f in [0.5, 1)
  const int shift = k - 1;
  if (shift == 0) return x;
  x.mantissa = {std::ldexp(x.mantissa.real(), -shift),
                std::ldexp(x.mantissa.imag(), -shift)};
  x.exponent += shift;
  return x;
}

inline ScaledComplex from_native(std::complex<double> z) {
  return normalize(ScaledComplex{z, 0});
}

inline ScaledComplex from_native(double x) {
  return from_native(std::complex<double>(x, 0.0));
}

inline ScaledComplex mul(const ScaledComplex& a, const ScaledComplex& b) {
  if (is_zero(a) || is_zero(b)) return ScaledComplex{};
  return normalize(ScaledComplex{a.mantissa * b.mantissa, a.exponent + b.exponent});
}

/// Multiply by 2^k without touching the mantissa.
inline ScaledComplex shift_exponent(ScaledComplex x, std::int64_t k) {
  if (is_zero(x)) return ScaledComplex{};
  x.exponent += k;
  return x;
}

inline ScaledComplex negate(ScaledComplex x) {
  x.mantissa = -x.mantissa;
  return x;
}

// Beyond this exponent gap the smaller addend cannot influence even the last
// bit of a 53-bit mantissa sum.
inline constexpr std::int64_t kAddAbsorbGap = 64;

/// Exponent-aligned addition.  When the gap exceeds the mantissa precision
/// the smaller addend is absorbed, matching native floating-point rounding.
inline ScaledComplex add(const ScaledComplex& a, const ScaledComplex& b) {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  const ScaledComplex& hi = (a.exponent >= b.exponent) ? a : b;
  const ScaledComplex& lo = (a.exponent >= b.exponent) ? b : a;
  const std::int64_t gap = hi.exponent - lo.exponent;
  if (gap > kAddAbsorbGap) return hi;
  const int g = static_cast<int>(gap);
  const std::complex<double> shifted{std::ldexp(lo.mantissa.real(), -g),
                                     std::ldexp(lo.mantissa.imag(), -g)};
  return normalize(ScaledComplex{hi.mantissa + shifted, hi.exponent});
}

inline ScaledComplex sub(const ScaledComplex& a, const ScaledComplex& b) {
  return add(a, negate(b));
}

/// Multiply by a native scalar (recurrence coefficients and the like).
inline ScaledComplex scale(const ScaledComplex& x, double s) {
  if (is_zero(x) || s == 0.0) return ScaledComplex{};
  return normalize(ScaledComplex{x.mantissa * s, x.exponent});
}

/// a / b as a native complex number.  Fails with divide_by_zero when b = 0,
/// and with overflow/underflow (the sign of the out-of-range exponent) when
/// the quotient does not fit the native double range.
inline RatioResult ratio(const ScaledComplex& a, const ScaledComplex& b) {
  if (is_zero(b)) return {{}, RatioStatus::divide_by_zero};
  if (is_zero(a)) return {{}, RatioStatus::ok};
  const std::complex<double> q = a.mantissa / b.mantissa;
  const std::int64_t de = a.exponent - b.exponent;
  int kq = 0;
  std::frexp(std::abs(q), &kq);  // |q| in [2^(kq-1), 2^kq)
  const std::int64_t top = de + kq;
  if (top >= 1024) return {{}, RatioStatus::overflow};
  if (top <= -1074) return {{}, RatioStatus::underflow};
  const int g = static_cast<int>(de);
  return {{std::ldexp(q.real(), g), std::ldexp(q.imag(), g)}, RatioStatus::ok};
}

/// Native value of x when it fits the double range.
inline RatioResult to_native(const ScaledComplex& x) {
  return ratio(x, ScaledComplex{{1.0, 0.0}, 0});
}

inline ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) { return mul(a, b); }
inline ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) { return add(a, b); }
inline ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return sub(a, b); }

}  // namespace megaroot
