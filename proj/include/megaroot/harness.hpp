#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "megaroot/engine.hpp"
#include "megaroot/grid.hpp"
#include "megaroot/poly.hpp"
#include "megaroot/roots.hpp"

namespace megaroot {

enum class FamilyKind {
  iterated_quadratic,
  chebyshev,
  legendre,
  known_roots,
  dense_random,
  dense_file,
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::chebyshev;
  std::int64_t degree = 0;        // chebyshev / legendre / known_roots / dense_random
  int level = 0;                  // iterated_quadratic nesting level n
  std::complex<double> c{0.0, 0.0};
  std::uint64_t seed = 1;         // known_roots / dense_random sampling
  std::string coeff_path;         // dense_file
};

struct Family {
  std::shared_ptr<const PolynomialModel> model;
  std::vector<std::complex<double>> true_roots;  // when has_truth
  bool has_truth = false;
  std::string descriptor;
};

/// Instantiate the family; Chebyshev and known-roots carry their analytic
/// roots.  Throws config_error on invalid parameters.
Family build_family(const FamilySpec& spec);

/// All 2^n solutions of p_n(z) = 0 (with multiplicity), computed as the
/// n-fold backward images of 0 under w -> w^2 + c.  Independent of the
/// forward evaluator, so the two can check each other.  Requires n <= 22.
std::vector<std::complex<double>> preimage_oracle(std::complex<double> c, int level);

/// Closed-form Chebyshev roots cos((2k-1)pi/(2d)), k = 1..d.
std::vector<std::complex<double>> chebyshev_roots(std::int64_t degree);

struct GridOptions {
  GridMode mode = GridMode::circle;
  std::int64_t points = -1;  // -1: practical default N = degree; 0 is empty
  double radius_factor = 2.0;
  double angular_offset = std::numeric_limits<double>::quiet_NaN();
  double hss_a = 0.26;
  double hss_b = 8.32;
};

struct ExperimentConfig {
  FamilySpec family;
  GridOptions grid;
  RunConfig run;
  double dedup_scale = 1.0;  // multiplies the dedup radius delta
  bool verify = false;
  int threads = 0;           // 0: hardware concurrency
  bool deterministic = false;
  double progress_seconds = 2.0;  // stderr cadence; <= 0 silences
};

struct StatusCounts {
  std::int64_t converged = 0;
  std::int64_t absorbed = 0;
  std::int64_t max_iter_exceeded = 0;
  std::int64_t escaped = 0;
};

struct HistogramBin {
  std::int64_t lo = 0;  // inclusive
  std::int64_t hi = 0;  // exclusive
  std::int64_t count = 0;
};

struct MatchSummary {
  std::int64_t matched = 0;
  std::int64_t unmatched = 0;
  std::int64_t spurious = 0;
  double max_error = 0.0;
  double mean_error = 0.0;
};

struct ExperimentReport {
  std::string family;
  std::int64_t degree = 0;
  std::int64_t grid_size = 0;
  std::int64_t orbits_run = 0;
  StatusCounts status_counts;
  std::int64_t distinct_roots = 0;
  std::int64_t iterations_total = 0;
  double iterations_mean = 0.0;
  std::int64_t iterations_max = 0;
  std::vector<HistogramBin> iteration_histogram;  // log-spaced: [1,2), [2,4), ...
  std::int64_t endgame_violations = 0;
  double wall_seconds = 0.0;
  double iterations_per_d_ln_d = 0.0;
  std::optional<MatchSummary> match;  // when verify is set
};

struct ExperimentOutput {
  ExperimentReport report;
  RootSet roots;
  MatchReport match_detail;  // populated when verify is set
};

GridSpec make_grid_spec(const GridOptions& opts, std::int64_t degree, double root_bound);

/// Launch Newton from every grid point, deduplicate converged terminals,
/// and assemble the statistics.  verify requires a family with ground truth
/// (chebyshev, known-roots, iterated quadratic with n <= 22).
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

}  // namespace megaroot
