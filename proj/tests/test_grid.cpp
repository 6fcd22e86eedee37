#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "megaroot/errors.hpp"
#include "megaroot/grid.hpp"

using namespace megaroot;
using complexd = std::complex<double>;

namespace {

GridSpec circle_spec(std::int64_t degree, double root_bound, std::int64_t points,
                     double rho, double offset) {
  GridSpec s;
  s.mode = GridMode::circle;
  s.degree = degree;
  s.root_bound = root_bound;
  s.points = points;
  s.radius_factor = rho;
  s.angular_offset = offset;
  return s;
}

GridSpec universal_spec(std::int64_t degree, double root_bound) {
  GridSpec s;
  s.mode = GridMode::universal;
  s.degree = degree;
  s.root_bound = root_bound;
  return s;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("grid size in circle mode is N") {
  CHECK(grid_size(circle_spec(1024, 1.0, 4096, 2.0, 0.0)) == 4096);
  CHECK(grid_size(circle_spec(1024, 1.0, 1, 2.0, 0.0)) == 1);
  // practical default: N = degree
  CHECK(grid_size(circle_spec(77, 1.0, -1, 2.0, 0.0)) == 77);
  // explicit zero is an empty grid
  CHECK(grid_size(circle_spec(77, 1.0, 0, 2.0, 0.0)) == 0);
}

TEST_CASE("universal grid size for d = 100 with the default factors") {
  // s = ceil(0.26 ln 100) = 2, N = ceil(8.32 * 100 * ln 100) = 3832
  const GridSpec s = universal_spec(100, 1.0);
  CHECK(circle_count(s) == 2);
  CHECK(points_per_circle(s) == 3832);
  CHECK(grid_size(s) == 7664);
}

TEST_CASE("circle launch points land at the expected angles") {
  const GridSpec quarter = circle_spec(4, 1.0, 4, 2.0, 0.0);
  const LaunchPoint p1 = launch_point(quarter, 1);
  CHECK(std::abs(p1.position - complexd{0.0, 2.0}) <= 1e-15);

  const GridSpec tilted = circle_spec(4, 1.0, 4, 2.0, std::numbers::pi / 4.0);
  const LaunchPoint p0 = launch_point(tilted, 0);
  const double s2 = std::sqrt(2.0);
  CHECK(std::abs(p0.position - complexd{s2, s2}) <= 1e-15);
}

TEST_CASE("every launch point sits on its circle radius") {
  const GridSpec u = universal_spec(100, 1.3);
  const std::int64_t n = points_per_circle(u);
  for (const std::int64_t k : {std::int64_t{0}, std::int64_t{17}, n - 1, n, n + 123,
                               grid_size(u) - 1}) {
    const LaunchPoint lp = launch_point(u, k);
    const double r = circle_radius(u, lp.circle);
    // |position| = radius to 1 ulp
    CHECK(std::abs(std::abs(lp.position) - r) <= 0x1.0p-52 * r);
    CHECK(lp.circle == k / n);
    CHECK(lp.slot == k % n);
  }
}

TEST_CASE("all launch points lie strictly outside the root disk") {
  const GridSpec c = circle_spec(64, 0.75, 64, 2.0,
                                 std::numeric_limits<double>::quiet_NaN());
  for (std::int64_t k = 0; k < 64; ++k) {
    CHECK(std::abs(launch_point(c, k).position) > c.root_bound);
  }
  const GridSpec u = universal_spec(50, 2.5);
  const std::int64_t total = grid_size(u);
  for (std::int64_t k = 0; k < total; k += total / 97 + 1) {
    CHECK(std::abs(launch_point(u, k).position) > u.root_bound);
  }
}

TEST_CASE("points on one circle are exactly equidistributed") {
  const GridSpec c = circle_spec(997, 1.3, 997, 2.0,
                                 std::numeric_limits<double>::quiet_NaN());
  const double want_gap = 2.0 * std::numbers::pi / 997.0;
  for (std::int64_t k = 0; k + 1 < 997; ++k) {
    const complexd a = launch_point(c, k).position;
    const complexd b = launch_point(c, k + 1).position;
    const double gap = std::arg(b * std::conj(a));
    // angles live at 2 pi scale, so "1 ulp" allows ~2^-51 there
    CHECK(std::abs(gap - want_gap) <= 4.0 * 0x1.0p-52 * 2.0 * std::numbers::pi);
  }
}

TEST_CASE("default angular offset keeps points off the real axis") {
  const GridSpec c = circle_spec(8, 1.0, 8, 2.0,
                                 std::numeric_limits<double>::quiet_NaN());
  CHECK(angular_offset(c) == std::numbers::pi / 16.0);
  for (std::int64_t k = 0; k < 8; ++k) {
    CHECK(std::abs(launch_point(c, k).position.imag()) > 1e-3);
  }
}

TEST_CASE("same spec and index give bit-identical positions") {
  const GridSpec u = universal_spec(321, 1.7);
  for (const std::int64_t k : {std::int64_t{0}, std::int64_t{1000}, grid_size(u) - 1}) {
    const LaunchPoint a = launch_point(u, k);
    const LaunchPoint b = launch_point(u, k);
    CHECK(std::memcmp(&a.position, &b.position, sizeof a.position) == 0);
  }
}

TEST_CASE("indexing is lazy enough for huge grids") {
  const GridSpec u = universal_spec(1'000'000, 1.0);
  CHECK(grid_size(u) > 100'000'000);
  const LaunchPoint lp = launch_point(u, 12'345'678);
  CHECK(std::isfinite(lp.position.real()));
  CHECK(std::abs(lp.position) > 1.0);
}

TEST_CASE("stagger keeps successive circles off radial alignment") {
  const GridSpec u = universal_spec(100, 1.0);
  REQUIRE(circle_count(u) == 2);
  const std::int64_t n = points_per_circle(u);
  const LaunchPoint a = launch_point(u, 0);
  const LaunchPoint b = launch_point(u, n);
  const double da = std::arg(b.position * std::conj(a.position));
  CHECK(std::abs(da) > 1e-12);  // not radially aligned
}

TEST_CASE("index range errors") {
  const GridSpec c = circle_spec(4, 1.0, 4, 2.0, 0.0);
  CHECK_THROWS_AS(launch_point(c, 4), std::out_of_range);
  CHECK_THROWS_AS(launch_point(c, -1), std::out_of_range);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(validate_grid_spec(circle_spec(0, 1.0, 4, 2.0, 0.0)), config_error);
  CHECK_THROWS_AS(validate_grid_spec(circle_spec(4, -1.0, 4, 2.0, 0.0)), config_error);
  CHECK_THROWS_AS(validate_grid_spec(circle_spec(4, 1.0, 4, 1.0, 0.0)), config_error);
  CHECK_THROWS_AS(validate_grid_spec(circle_spec(4, 1.0, -2, 2.0, 0.0)), config_error);
  GridSpec bad_a = universal_spec(4, 1.0);
  bad_a.hss_a = 0.0;
  CHECK_THROWS_AS(validate_grid_spec(bad_a), config_error);
  CHECK_NOTHROW(validate_grid_spec(circle_spec(4, 1.0, 0, 2.0, 0.0)));
}

}  // TEST_SUITE
