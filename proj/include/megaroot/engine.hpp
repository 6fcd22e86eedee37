#pragma once

#include <complex>
#include <cstdint>

#include "megaroot/poly.hpp"
#include "megaroot/roots.hpp"

namespace megaroot {

/// Per-orbit iteration controls.  Zero-valued max_iter / escape_cap resolve
/// to the defaults 50*ln(d)+500 and 4*|z0| (four launch radii).
struct RunConfig {
  double eps_stop = 1e-13;
  std::int64_t max_iter = 0;
  double absorb_factor = 1.0;
  double perturb_scale = 1e-9;
  double escape_cap = 0.0;
  std::uint64_t seed = 1;
};

std::int64_t default_max_iter(std::int64_t degree);

enum class OrbitStatus { converged, absorbed, max_iter_exceeded, escaped };

struct OrbitResult {
  OrbitStatus status = OrbitStatus::max_iter_exceeded;
  std::int64_t absorbed_id = -1;  // valid when status == absorbed
  std::complex<double> terminal{0.0, 0.0};
  std::int64_t iterations = 0;
  double correction = 0.0;   // |p/p'| at the last completed step
  double certificate = 0.0;  // degree * correction
  // |correction| non-increasing over the last 5 steps of a converged orbit
  // (quadratic endgame); violations are counted upstream, never fatal.
  bool endgame_monotone = true;
};

struct StepResult {
  enum class Kind { ok, critical_point, huge_step };
  Kind kind = Kind::ok;
  std::complex<double> next{0.0, 0.0};
  std::complex<double> correction{0.0, 0.0};
};

/// One Newton step z -> z - p(z)/p'(z) using the joint evaluation.
/// critical_point when p'(z) = 0 exactly; huge_step when the correction
/// overflows the native range (an evaluation bug surfaced, not hidden).
StepResult newton_step(const PolynomialModel& poly, std::complex<double> z);

/// Iterate Newton from z0 until the relative step drops below eps_stop, the
/// orbit is absorbed by a known root (close AND already slow), the iteration
/// cap is hit, or |z| leaves the escape cap.  Deterministic for a fixed
/// (seed, orbit_index): critical points are retried at most 3 times with a
/// seeded multiplicative jitter, then the orbit fails as max_iter_exceeded.
OrbitResult run_orbit(const PolynomialModel& poly, std::complex<double> z0,
                      const RunConfig& cfg, const RootSet* known,
                      std::uint64_t orbit_index);

}  // namespace megaroot
