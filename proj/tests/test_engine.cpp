#include <doctest.h>

#include <cmath>
#include <cstring>

#include "megaroot/engine.hpp"
#include "megaroot/roots.hpp"
#include "oracles.hpp"

using namespace megaroot;
using oracles::complexd;

namespace {

DensePoly z2_minus_1() { return DensePoly({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}); }

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("newton step on z^2 - 1") {
  const DensePoly p = z2_minus_1();

  const StepResult at2 = newton_step(p, {2.0, 0.0});
  REQUIRE(at2.kind == StepResult::Kind::ok);
  CHECK(at2.correction == complexd{0.75, 0.0});
  CHECK(at2.next == complexd{1.25, 0.0});

  const StepResult at1 = newton_step(p, {1.0, 0.0});
  REQUIRE(at1.kind == StepResult::Kind::ok);
  CHECK(at1.correction == complexd{0.0, 0.0});  // converged in place
  CHECK(at1.next == complexd{1.0, 0.0});

  const StepResult at0 = newton_step(p, {0.0, 0.0});
  CHECK(at0.kind == StepResult::Kind::critical_point);
}

TEST_CASE("orbit from 2 converges to 1 within 8 iterations") {
  const DensePoly p = z2_minus_1();
  RunConfig cfg;
  const OrbitResult r = run_orbit(p, {2.0, 0.0}, cfg, nullptr, 0);
  CHECK(r.status == OrbitStatus::converged);
  CHECK(r.iterations <= 8);
  CHECK(std::abs(r.terminal - complexd{1.0, 0.0}) <= 1e-12);
  CHECK(r.correction <= cfg.eps_stop * std::max(1.0, std::abs(r.terminal)));
  CHECK(r.certificate == 2.0 * r.correction);
  CHECK(r.endgame_monotone);
}

TEST_CASE("orbit from i never leaves the imaginary axis and fails") {
  const DensePoly p = z2_minus_1();
  RunConfig cfg;

  // z = i maps to the critical point 0; multiplicative jitter cannot move
  // an exact zero, so the retries exhaust
  const OrbitResult at_i = run_orbit(p, {0.0, 1.0}, cfg, nullptr, 0);
  CHECK(at_i.status == OrbitStatus::max_iter_exceeded);

  // generic imaginary starts wander on the axis until the cap
  const OrbitResult generic = run_orbit(p, {0.0, 0.7}, cfg, nullptr, 0);
  CHECK(generic.status == OrbitStatus::max_iter_exceeded);
  CHECK(generic.iterations == default_max_iter(2));
  CHECK(generic.terminal.real() == 0.0);
}

TEST_CASE("orbit is absorbed by a pre-seeded root") {
  const DensePoly p = z2_minus_1();
  RunConfig cfg;
  RootSet known(dedup_radius(2, cfg.eps_stop, 1.0));
  known.insert({1.0, 0.0}, 1e-15, 0);

  const OrbitResult r = run_orbit(p, {2.0, 0.0}, cfg, &known, 1);
  CHECK(r.status == OrbitStatus::absorbed);
  CHECK(r.absorbed_id == 0);
  CHECK(std::abs(r.terminal - complexd{1.0, 0.0}) <= known.delta());
  // absorption only fires once the orbit is already slow
  CHECK(r.correction <= 1e3 * cfg.eps_stop * std::max(1.0, std::abs(r.terminal)));

  // absorb_factor = 0 disables absorption entirely
  RunConfig no_absorb = cfg;
  no_absorb.absorb_factor = 0.0;
  const OrbitResult r2 = run_orbit(p, {2.0, 0.0}, no_absorb, &known, 1);
  CHECK(r2.status == OrbitStatus::converged);
}

TEST_CASE("certificate radius bounds the distance to the nearest root") {
  SplitMix64 rng(404);
  int cases = 0;
  while (cases < 1000) {
    const int d = 1 + static_cast<int>(rng.next() % 12);
    std::vector<complexd> roots;
    for (int i = 0; i < d; ++i) roots.push_back(rng.next_in_disk());
    const KnownRootsPoly poly(roots);
    const complexd z = oracles::random_in_disk(rng, 2.0);

    const EvalResult e = poly.eval(z);
    const RatioResult corr = ratio(e.value, e.derivative);
    if (corr.status == RatioStatus::divide_by_zero) continue;  // p'(z) = 0
    REQUIRE(corr.ok());

    double min_dist = std::numeric_limits<double>::infinity();
    for (const auto& r : roots) min_dist = std::min(min_dist, std::abs(z - r));
    CHECK(min_dist <= static_cast<double>(d) * std::abs(corr.value));
    ++cases;
  }
}

TEST_CASE("orbits are deterministic for a fixed seed") {
  const DensePoly p = z2_minus_1();
  RunConfig cfg;
  cfg.seed = 42;
  const OrbitResult a = run_orbit(p, {1.3, 0.4}, cfg, nullptr, 7);
  const OrbitResult b = run_orbit(p, {1.3, 0.4}, cfg, nullptr, 7);
  CHECK(a.status == b.status);
  CHECK(std::memcmp(&a.terminal, &b.terminal, sizeof a.terminal) == 0);
  CHECK(a.iterations == b.iterations);
  CHECK(std::memcmp(&a.correction, &b.correction, sizeof a.correction) == 0);
  CHECK(std::memcmp(&a.certificate, &b.certificate, sizeof a.certificate) == 0);
}

TEST_CASE("double root converges linearly but still terminates") {
  const DensePoly p({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});  // z^2
  RunConfig cfg;
  const OrbitResult r = run_orbit(p, {1.0, 0.0}, cfg, nullptr, 0);
  CHECK(r.status == OrbitStatus::converged);
  CHECK(r.iterations < 100);  // halving per step, ~43 to reach 1e-13
  CHECK(r.iterations > 20);
  CHECK(std::abs(r.terminal) <= 1e-12);
}

TEST_CASE("critical point off the origin is jittered away") {
  // p = z^3 - 3z has critical points at +-1
  const DensePoly p({{0.0, 0.0}, {-3.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
  RunConfig cfg;
  const OrbitResult r = run_orbit(p, {1.0, 0.0}, cfg, nullptr, 3);
  CHECK(r.status == OrbitStatus::converged);
}

TEST_CASE("escape cap is surfaced as a diagnostic status") {
  const DensePoly p({{-5.0, 0.0}, {1.0, 0.0}});  // z - 5, root outside the cap
  RunConfig cfg;
  cfg.escape_cap = 2.5;
  const OrbitResult r = run_orbit(p, {2.4, 0.0}, cfg, nullptr, 0);
  CHECK(r.status == OrbitStatus::escaped);
}

TEST_CASE("max_iter default grows with ln d") {
  CHECK(default_max_iter(2) == 535);
  CHECK(default_max_iter(1024) == 847);
  CHECK(default_max_iter(1'048'576) == 1193);
  RunConfig cfg;
  cfg.max_iter = 3;
  const DensePoly p = z2_minus_1();
  const OrbitResult r = run_orbit(p, {100.0, 3.0}, cfg, nullptr, 0);
  CHECK(r.status == OrbitStatus::max_iter_exceeded);
  CHECK(r.iterations == 3);
}

}  // TEST_SUITE
