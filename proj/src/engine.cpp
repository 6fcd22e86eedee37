#include "megaroot/engine.hpp"

#include <cmath>

#include "megaroot/rng.hpp"

namespace megaroot {

std::int64_t default_max_iter(std::int64_t degree) {
  const double d = static_cast<double>(std::max<std::int64_t>(degree, 2));
  // far launch points need ~ln d approach steps before the quadratic endgame
  return std::llround(50.0 * std::log(d)) + 500;
}

StepResult newton_step(const PolynomialModel& poly, std::complex<double> z) {
  const EvalResult e = poly.eval(z);
  const RatioResult r = ratio(e.value, e.derivative);
  switch (r.status) {
    case RatioStatus::divide_by_zero:
      return {StepResult::Kind::critical_point, z, {0.0, 0.0}};
    case RatioStatus::overflow:
      return {StepResult::Kind::huge_step, z, {0.0, 0.0}};
    case RatioStatus::underflow:
      // correction below the native range: converged in place
      return {StepResult::Kind::ok, z, {0.0, 0.0}};
    case RatioStatus::ok:
      break;
  }
  return {StepResult::Kind::ok, z - r.value, r.value};
}

namespace {

std::complex<double> perturb(std::complex<double> z, const RunConfig& cfg,
                             std::uint64_t orbit_index, int attempt) {
  SplitMix64 rng(mix_seed(cfg.seed, orbit_index,
                          0x70657274757262ull + static_cast<std::uint64_t>(attempt)));
  return z * (1.0 + cfg.perturb_scale * rng.next_on_circle());
}

// last up-to-5 corrections, oldest first
struct CorrectionTail {
  double values[5] = {0, 0, 0, 0, 0};
  std::int64_t count = 0;

  void push(double v) { values[count++ % 5] = v; }

  bool non_increasing() const {
    const std::int64_t n = std::min<std::int64_t>(count, 5);
    for (std::int64_t i = 1; i < n; ++i) {
      const double prev = values[(count - n + i - 1) % 5];
      const double cur = values[(count - n + i) % 5];
      if (cur > prev) return false;
    }
    return true;
  }
};

}  // namespace

OrbitResult run_orbit(const PolynomialModel& poly, std::complex<double> z0,
                      const RunConfig& cfg, const RootSet* known,
                      std::uint64_t orbit_index) {
  const std::int64_t cap_iter =
      cfg.max_iter > 0 ? cfg.max_iter : default_max_iter(poly.degree());
  const double escape =
      cfg.escape_cap > 0.0 ? cfg.escape_cap : 4.0 * std::abs(z0);
  const double absorb_radius =
      (known && cfg.absorb_factor > 0.0) ? cfg.absorb_factor * known->delta() : 0.0;

  OrbitResult res;
  res.terminal = z0;
  std::complex<double> z = z0;
  CorrectionTail tail;

  for (std::int64_t it = 1; it <= cap_iter; ++it) {
    StepResult step = newton_step(poly, z);
    int attempt = 0;
    while (step.kind == StepResult::Kind::critical_point && attempt < 3) {
      z = perturb(z, cfg, orbit_index, attempt);
      step = newton_step(poly, z);
      ++attempt;
    }
    if (step.kind == StepResult::Kind::critical_point) {
      res.status = OrbitStatus::max_iter_exceeded;
      res.terminal = z;
      res.iterations = it;
      break;
    }
    if (step.kind == StepResult::Kind::huge_step) {
      res.status = OrbitStatus::escaped;
      res.terminal = z;
      res.iterations = it;
      break;
    }

    z = step.next;
    const double corr = std::abs(step.correction);
    tail.push(corr);
    res.terminal = z;
    res.iterations = it;
    res.correction = corr;

    const double stop = cfg.eps_stop * std::max(1.0, std::abs(z));
    // absorption first: requires proximity AND an already-slow step, so a
    // fast transit near a foreign basin is never captured
    if (absorb_radius > 0.0 && corr <= 1e3 * stop) {
      if (const auto hit = known->nearest(z, absorb_radius)) {
        res.status = OrbitStatus::absorbed;
        res.absorbed_id = static_cast<std::int64_t>(hit->id);
        break;
      }
    }
    if (corr <= stop) {
      res.status = OrbitStatus::converged;
      res.endgame_monotone = tail.non_increasing();
      break;
    }
    if (std::abs(z) > escape) {
      res.status = OrbitStatus::escaped;
      break;
    }
  }

  res.certificate = static_cast<double>(poly.degree()) * res.correction;
  return res;
}

}  // namespace megaroot
