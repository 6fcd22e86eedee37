#pragma once

#include <complex>
#include <cstdint>
#include <limits>

namespace megaroot {

enum class GridMode { circle, universal };

/// Launch-point geometry.  Circle mode is the practical default: N points
/// equidistributed on one circle of radius radius_factor * root_bound.
/// Universal mode is the theory-backed multi-circle set with
/// s = ceil(hss_a * ln d) circles of ceil(hss_b * d * ln d) points each.
struct GridSpec {
  GridMode mode = GridMode::circle;
  std::int64_t degree = 1;
  double root_bound = 1.0;

  // circle mode; -1 means the practical default N = degree (0 is a valid
  // empty grid, used for degenerate zero-orbit experiments).
  std::int64_t points = -1;
  double radius_factor = 2.0;
  // NaN means the default pi/(2N), which keeps launch points off the real
  // axis where Newton oscillates on real-rooted families.
  double angular_offset = std::numeric_limits<double>::quiet_NaN();

  // universal mode
  double hss_a = 0.26;
  double hss_b = 8.32;
};

struct LaunchPoint {
  std::complex<double> position{0.0, 0.0};
  std::int64_t circle = 0;
  std::int64_t slot = 0;
};

/// Validates a spec; throws std::invalid_argument on bad parameters
/// (degree < 1, points < 0, radius_factor <= 1, non-positive hss factors).
void validate_grid_spec(const GridSpec& spec);

/// Number of circles (1 in circle mode).
std::int64_t circle_count(const GridSpec& spec);

/// Points per circle.
std::int64_t points_per_circle(const GridSpec& spec);

/// Total number of launch points.
std::int64_t grid_size(const GridSpec& spec);

/// Radius of circle v.  Universal radii are geometrically spaced from
/// root_bound * (1 + sqrt(2)) (v = 0, outermost) down to
/// radius_factor * root_bound.
double circle_radius(const GridSpec& spec, std::int64_t v);

/// Resolved angular offset (phi0).
double angular_offset(const GridSpec& spec);

/// Launch point k, 0 <= k < grid_size(spec).  Pure and O(1): the grid is
/// never materialized.  Throws std::out_of_range on a bad index.
LaunchPoint launch_point(const GridSpec& spec, std::int64_t k);

}  // namespace megaroot
