#include "megaroot/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "megaroot/errors.hpp"

namespace megaroot {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kOuterFactor = 1.0 + std::numbers::sqrt2;
}  // namespace

void validate_grid_spec(const GridSpec& spec) {
  if (spec.degree < 1) throw config_error("grid degree must be >= 1");
  if (!(spec.root_bound > 0.0) || !std::isfinite(spec.root_bound)) {
    throw config_error("grid root bound must be positive and finite");
  }
  if (!(spec.radius_factor > 1.0)) {
    throw config_error("radius factor must exceed 1 (launch points outside the root disk)");
  }
  if (spec.points < -1) throw config_error("grid point count must be >= 0 (-1 for default)");
  if (!std::isnan(spec.angular_offset) && !std::isfinite(spec.angular_offset)) {
    throw config_error("angular offset must be finite");
  }
  if (spec.mode == GridMode::universal) {
    if (!(spec.hss_a > 0.0) || !(spec.hss_b > 0.0)) {
      throw config_error("universal grid factors must be positive");
    }
  }
}

std::int64_t circle_count(const GridSpec& spec) {
  if (spec.mode == GridMode::circle) return 1;
  const double s = std::ceil(spec.hss_a * std::log(static_cast<double>(spec.degree)));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(s));
}

std::int64_t points_per_circle(const GridSpec& spec) {
  if (spec.mode == GridMode::circle) {
    return spec.points < 0 ? spec.degree : spec.points;
  }
  const double n = std::ceil(spec.hss_b * static_cast<double>(spec.degree) *
                             std::log(static_cast<double>(spec.degree)));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

std::int64_t grid_size(const GridSpec& spec) {
  return circle_count(spec) * points_per_circle(spec);
}

double circle_radius(const GridSpec& spec, std::int64_t v) {
  const double launch = spec.radius_factor * spec.root_bound;
  if (spec.mode == GridMode::circle) return launch;
  const std::int64_t s = circle_count(spec);
  const double outer = kOuterFactor * spec.root_bound;
  if (s == 1) return outer;
  // geometric schedule, outermost first
  const double t = static_cast<double>(v) / static_cast<double>(s - 1);
  return outer * std::pow(launch / outer, t);
}

double angular_offset(const GridSpec& spec) {
  if (!std::isnan(spec.angular_offset)) return spec.angular_offset;
  const std::int64_t n = points_per_circle(spec);
  return n > 0 ? kPi / (2.0 * static_cast<double>(n)) : 0.0;
}

LaunchPoint launch_point(const GridSpec& spec, std::int64_t k) {
  const std::int64_t total = grid_size(spec);
  if (k < 0 || k >= total) throw std::out_of_range("launch point index out of range");
  const std::int64_t n = points_per_circle(spec);
  const std::int64_t v = spec.mode == GridMode::universal ? k / n : 0;
  const std::int64_t j = spec.mode == GridMode::universal ? k % n : k;
  double theta = angular_offset(spec) +
                 2.0 * kPi * (static_cast<double>(j) / static_cast<double>(n));
  if (spec.mode == GridMode::universal) {
    // stagger successive circles so points are never radially aligned
    const std::int64_t s = circle_count(spec);
    theta += static_cast<double>(v) * kPi /
             (static_cast<double>(s) * static_cast<double>(n));
  }
  return {std::polar(circle_radius(spec, v), theta), v, j};
}

}  // namespace megaroot
