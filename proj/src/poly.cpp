#include "megaroot/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "megaroot/errors.hpp"

namespace megaroot {

namespace {

std::string format_complex(std::complex<double> z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
  return buf;
}

// Shared power-of-two rescaling for native-valued recurrences.  The four
// live recurrence values share one binary exponent; mantissas are pulled
// back toward unit scale long before they can reach the native overflow
// threshold (growth per step is bounded by a few bits).
constexpr double kRescaleHi = 0x1p512;
constexpr double kRescaleLo = 0x1p-512;

inline void rescale_shared(std::complex<double>& a, std::complex<double>& b,
                           std::complex<double>& c, std::complex<double>& d,
                           std::int64_t& exponent) {
  const double m = std::max(
      std::max(std::max(std::fabs(a.real()), std::fabs(a.imag())),
               std::max(std::fabs(b.real()), std::fabs(b.imag()))),
      std::max(std::max(std::fabs(c.real()), std::fabs(c.imag())),
               std::max(std::fabs(d.real()), std::fabs(d.imag()))));
  if (m > kRescaleHi) {
    a *= kRescaleLo;
    b *= kRescaleLo;
    c *= kRescaleLo;
    d *= kRescaleLo;
    exponent += 512;
  } else if (m < kRescaleLo && m > 0.0) {
    a *= kRescaleHi;
    b *= kRescaleHi;
    c *= kRescaleHi;
    d *= kRescaleHi;
    exponent -= 512;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DensePoly

DensePoly::DensePoly(std::vector<std::complex<double>> ascending_coefficients)
    : coefficients_(std::move(ascending_coefficients)) {
  if (coefficients_.size() < 2) {
    throw config_error("dense polynomial needs degree >= 1 (at least two coefficients)");
  }
  const std::complex<double> lead = coefficients_.back();
  if (lead == 0.0) {
    throw config_error("dense polynomial leading coefficient must be nonzero");
  }
  double max_ratio = 0.0;
  const double lead_mag = std::abs(lead);
  for (std::size_t k = 0; k + 1 < coefficients_.size(); ++k) {
    max_ratio = std::max(max_ratio, std::abs(coefficients_[k]) / lead_mag);
  }
  root_bound_ = 1.0 + max_ratio;  // Cauchy bound
  scaled_coefficients_.reserve(coefficients_.size());
  for (const auto& a : coefficients_) scaled_coefficients_.push_back(from_native(a));
}

DensePoly DensePoly::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open coefficient file: " + path.string());
  std::vector<std::complex<double>> coeffs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream iss(line);
    double re = 0.0, im = 0.0;
    if (!(iss >> re >> im)) {
      throw config_error("bad coefficient line " + std::to_string(lineno) +
                         " in " + path.string() + ": expected \"re im\"");
    }
    std::string extra;
    if (iss >> extra) {
      throw config_error("trailing tokens on coefficient line " + std::to_string(lineno) +
                         " in " + path.string());
    }
    coeffs.emplace_back(re, im);
  }
  return DensePoly(std::move(coeffs));
}

std::string DensePoly::describe() const {
  return "dense(d=" + std::to_string(degree()) + ")";
}

EvalResult DensePoly::eval_counted(std::complex<double> z, std::int64_t& steps) const {
  const ScaledComplex zs = from_native(z);
  ScaledComplex p = scaled_coefficients_.back();
  ScaledComplex dp;
  for (std::size_t i = scaled_coefficients_.size() - 1; i-- > 0;) {
    dp = add(mul(dp, zs), p);
    p = add(mul(p, zs), scaled_coefficients_[i]);
    ++steps;
  }
  return {p, dp};
}

// ---------------------------------------------------------------------------
// IteratedQuadratic

IteratedQuadratic::IteratedQuadratic(std::complex<double> c, int level)
    : c_(c), c_scaled_(from_native(c)), level_(level) {
  if (level < 1 || level > 60) {
    throw config_error("iterated quadratic level must be in [1, 60]");
  }
}

double IteratedQuadratic::root_bound() const {
  // escape radius of w -> w^2 + c
  return std::max(2.0, std::abs(c_));
}

std::string IteratedQuadratic::describe() const {
  return "iterquad(c=" + format_complex(c_) + ",n=" + std::to_string(level_) + ")";
}

EvalResult IteratedQuadratic::eval_counted(std::complex<double> z, std::int64_t& steps) const {
  // q_{k+1} = q_k^2 + c, dq_{k+1} = 2 q_k dq_k
  ScaledComplex q = from_native(z);
  ScaledComplex dq = from_native(1.0);
  for (int k = 0; k < level_; ++k) {
    dq = shift_exponent(mul(q, dq), 1);
    q = add(mul(q, q), c_scaled_);
    ++steps;
  }
  return {q, dq};
}

// ---------------------------------------------------------------------------
// ChebyshevPoly

ChebyshevPoly::ChebyshevPoly(std::int64_t degree) : degree_(degree) {
  if (degree < 1) throw config_error("chebyshev degree must be >= 1");
}

std::string ChebyshevPoly::describe() const {
  return "chebyshev(d=" + std::to_string(degree_) + ")";
}

EvalResult ChebyshevPoly::eval_counted(std::complex<double> z, std::int64_t& steps) const {
  if (degree_ == 1) return {from_native(z), from_native(1.0)};
  // T_{k+1} = 2z T_k - T_{k-1};  T'_{k+1} = 2 T_k + 2z T'_k - T'_{k-1}
  std::complex<double> t_prev{1.0, 0.0};
  std::complex<double> t = z;
  std::complex<double> dt_prev{0.0, 0.0};
  std::complex<double> dt{1.0, 0.0};
  std::int64_t exponent = 0;
  const std::complex<double> two_z = 2.0 * z;
  for (std::int64_t k = 1; k < degree_; ++k) {
    const std::complex<double> t_next = two_z * t - t_prev;
    const std::complex<double> dt_next = 2.0 * t + two_z * dt - dt_prev;
    t_prev = t;
    t = t_next;
    dt_prev = dt;
    dt = dt_next;
    rescale_shared(t_prev, t, dt_prev, dt, exponent);
    ++steps;
  }
  return {normalize({t, exponent}), normalize({dt, exponent})};
}

// ---------------------------------------------------------------------------
// LegendrePoly

LegendrePoly::LegendrePoly(std::int64_t degree) : degree_(degree) {
  if (degree < 1) throw config_error("legendre degree must be >= 1");
}

std::string LegendrePoly::describe() const {
  return "legendre(d=" + std::to_string(degree_) + ")";
}

EvalResult LegendrePoly::eval_counted(std::complex<double> z, std::int64_t& steps) const {
  if (degree_ == 1) return {from_native(z), from_native(1.0)};
  // (k+1) P_{k+1} = (2k+1) z P_k - k P_{k-1}, differentiated in lockstep
  std::complex<double> p_prev{1.0, 0.0};
  std::complex<double> p = z;
  std::complex<double> dp_prev{0.0, 0.0};
  std::complex<double> dp{1.0, 0.0};
  std::int64_t exponent = 0;
  for (std::int64_t k = 1; k < degree_; ++k) {
    const double a = (2.0 * k + 1.0) / (k + 1.0);
    const double b = static_cast<double>(k) / (k + 1.0);
    const std::complex<double> p_next = a * z * p - b * p_prev;
    const std::complex<double> dp_next = a * (p + z * dp) - b * dp_prev;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
    rescale_shared(p_prev, p, dp_prev, dp, exponent);
    ++steps;
  }
  return {normalize({p, exponent}), normalize({dp, exponent})};
}

// ---------------------------------------------------------------------------
// KnownRootsPoly

KnownRootsPoly::KnownRootsPoly(std::vector<std::complex<double>> roots)
    : roots_(std::move(roots)) {
  if (roots_.empty()) throw config_error("known-roots polynomial needs at least one root");
  for (const auto& r : roots_) root_bound_ = std::max(root_bound_, std::abs(r));
  if (root_bound_ == 0.0) root_bound_ = std::numeric_limits<double>::min();

  auto sorted = roots_;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::size_t run = 1;
  profile_.distinct = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      ++profile_.distinct;
      run = 1;
    }
    profile_.max_multiplicity = std::max(profile_.max_multiplicity, run);
  }
}

std::string KnownRootsPoly::describe() const {
  return "known-roots(d=" + std::to_string(degree()) + ")";
}

EvalResult KnownRootsPoly::eval_counted(std::complex<double> z, std::int64_t& steps) const {
  // p_k = p_{k-1} (z - r_k), dp_k = dp_{k-1} (z - r_k) + p_{k-1}
  ScaledComplex p = from_native(1.0);
  ScaledComplex dp;
  for (const auto& r : roots_) {
    const ScaledComplex zr = from_native(z - r);
    dp = add(mul(dp, zr), p);
    p = mul(p, zr);
    ++steps;
  }
  return {p, dp};
}

CorrectionResult newton_correction_known_roots(const KnownRootsPoly& poly,
                                               std::complex<double> z) {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& r : poly.roots()) {
    const std::complex<double> diff = z - r;
    if (diff == 0.0) return {{0.0, 0.0}, CorrectionStatus::ok};
    sum += 1.0 / diff;
  }
  if (sum == 0.0) return {{0.0, 0.0}, CorrectionStatus::critical_point};
  return {1.0 / sum, CorrectionStatus::ok};
}

}  // namespace megaroot
