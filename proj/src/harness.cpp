#include "megaroot/harness.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <thread>

#include "megaroot/errors.hpp"
#include "megaroot/rng.hpp"

namespace megaroot {

namespace {

std::string format_seeded(const char* name, std::int64_t degree, std::uint64_t seed) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s(d=%lld,seed=%llu)", name,
                static_cast<long long>(degree),
                static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace

std::vector<std::complex<double>> chebyshev_roots(std::int64_t degree) {
  std::vector<std::complex<double>> roots;
  roots.reserve(static_cast<std::size_t>(degree));
  for (std::int64_t k = 1; k <= degree; ++k) {
    const double theta = (2.0 * static_cast<double>(k) - 1.0) * std::numbers::pi /
                         (2.0 * static_cast<double>(degree));
    roots.emplace_back(std::cos(theta), 0.0);
  }
  return roots;
}

std::vector<std::complex<double>> preimage_oracle(std::complex<double> c, int level) {
  if (level < 1 || level > 22) {
    throw config_error("preimage oracle supports levels 1..22");
  }
  std::vector<std::complex<double>> current{{0.0, 0.0}};
  for (int k = 0; k < level; ++k) {
    std::vector<std::complex<double>> next;
    next.reserve(current.size() * 2);
    for (const auto& w : current) {
      const std::complex<double> s = std::sqrt(w - c);
      next.push_back(s);
      next.push_back(-s);
    }
    current = std::move(next);
  }
  return current;
}

Family build_family(const FamilySpec& spec) {
  Family fam;
  switch (spec.kind) {
    case FamilyKind::chebyshev: {
      auto model = std::make_shared<ChebyshevPoly>(spec.degree);
      fam.descriptor = model->describe();
      fam.true_roots = chebyshev_roots(spec.degree);
      fam.has_truth = true;
      fam.model = std::move(model);
      break;
    }
    case FamilyKind::legendre: {
      auto model = std::make_shared<LegendrePoly>(spec.degree);
      fam.descriptor = model->describe();
      fam.model = std::move(model);
      break;
    }
    case FamilyKind::iterated_quadratic: {
      auto model = std::make_shared<IteratedQuadratic>(spec.c, spec.level);
      fam.descriptor = model->describe();
      fam.model = std::move(model);
      break;
    }
    case FamilyKind::known_roots: {
      if (spec.degree < 1) throw config_error("known-roots family needs degree >= 1");
      SplitMix64 rng(mix_seed(spec.seed, 0x6b6e6f776e726f6full, 0));
      std::vector<std::complex<double>> roots;
      roots.reserve(static_cast<std::size_t>(spec.degree));
      for (std::int64_t i = 0; i < spec.degree; ++i) roots.push_back(rng.next_in_disk());
      fam.descriptor = format_seeded("known-roots", spec.degree, spec.seed);
      fam.true_roots = roots;
      fam.has_truth = true;
      fam.model = std::make_shared<KnownRootsPoly>(std::move(roots));
      break;
    }
    case FamilyKind::dense_random: {
      if (spec.degree < 1) throw config_error("dense-random family needs degree >= 1");
      SplitMix64 rng(mix_seed(spec.seed, 0x64656e736572616eull, 0));
      std::vector<std::complex<double>> coeffs;
      coeffs.reserve(static_cast<std::size_t>(spec.degree) + 1);
      for (std::int64_t i = 0; i <= spec.degree; ++i) {
        coeffs.emplace_back(rng.next_symmetric(), rng.next_symmetric());
      }
      while (coeffs.back() == 0.0) {
        coeffs.back() = {rng.next_symmetric(), rng.next_symmetric()};
      }
      fam.descriptor = format_seeded("dense-random", spec.degree, spec.seed);
      fam.model = std::make_shared<DensePoly>(std::move(coeffs));
      break;
    }
    case FamilyKind::dense_file: {
      if (spec.coeff_path.empty()) throw config_error("dense-file family needs a coefficient file");
      auto model = std::make_shared<DensePoly>(DensePoly::from_file(spec.coeff_path));
      fam.descriptor = "dense-file(" + spec.coeff_path + ",d=" +
                       std::to_string(model->degree()) + ")";
      fam.model = std::move(model);
      break;
    }
  }
  return fam;
}

GridSpec make_grid_spec(const GridOptions& opts, std::int64_t degree, double root_bound) {
  GridSpec spec;
  spec.mode = opts.mode;
  spec.degree = degree;
  spec.root_bound = root_bound;
  spec.points = opts.points;
  spec.radius_factor = opts.radius_factor;
  spec.angular_offset = opts.angular_offset;
  spec.hss_a = opts.hss_a;
  spec.hss_b = opts.hss_b;
  return spec;
}

namespace {

struct OrbitStats {
  StatusCounts counts;
  std::int64_t iter_total = 0;
  std::int64_t iter_max = 0;
  std::vector<std::int64_t> hist;  // hist[i] counts iterations in [2^i, 2^(i+1))
  std::int64_t endgame_violations = 0;

  void add(const OrbitResult& r) {
    switch (r.status) {
      case OrbitStatus::converged:
        ++counts.converged;
        if (!r.endgame_monotone) ++endgame_violations;
        break;
      case OrbitStatus::absorbed:
        ++counts.absorbed;
        break;
      case OrbitStatus::max_iter_exceeded:
        ++counts.max_iter_exceeded;
        break;
      case OrbitStatus::escaped:
        ++counts.escaped;
        break;
    }
    iter_total += r.iterations;
    iter_max = std::max(iter_max, r.iterations);
    if (r.iterations >= 1) {
      const std::size_t bin =
          static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(r.iterations)) - 1);
      if (hist.size() <= bin) hist.resize(bin + 1, 0);
      ++hist[bin];
    }
  }
};

class ProgressTicker {
 public:
  ProgressTicker(double cadence_seconds, std::int64_t total)
      : cadence_(cadence_seconds), total_(total),
        last_(std::chrono::steady_clock::now()) {}

  void maybe_print(std::int64_t done, std::size_t roots) {
    if (cadence_ <= 0.0) return;
    const auto now = std::chrono::steady_clock::now();
    if (std::chrono::duration<double>(now - last_).count() < cadence_) return;
    last_ = now;
    std::fprintf(stderr, "megaroot: %lld/%lld orbits, %zu distinct roots\n",
                 static_cast<long long>(done), static_cast<long long>(total_), roots);
  }

 private:
  double cadence_;
  std::int64_t total_;
  std::chrono::steady_clock::time_point last_;
};

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();

  Family fam = build_family(cfg.family);
  const std::int64_t d = fam.model->degree();
  const double root_bound = fam.model->root_bound();

  GridSpec grid = make_grid_spec(cfg.grid, d, root_bound);
  validate_grid_spec(grid);
  const std::int64_t total = grid_size(grid);

  std::vector<std::complex<double>> truth;
  if (cfg.verify) {
    if (fam.has_truth) {
      truth = fam.true_roots;
    } else if (cfg.family.kind == FamilyKind::iterated_quadratic) {
      truth = preimage_oracle(cfg.family.c, cfg.family.level);
    } else {
      throw config_error("verify requires a family with known roots "
                         "(chebyshev, known-roots, or iterquad with n <= 22)");
    }
  }

  if (!(cfg.dedup_scale > 0.0)) throw config_error("dedup scale must be positive");
  const double scale = std::max(1.0, root_bound);
  const double delta = dedup_radius(d, cfg.run.eps_stop, scale) * cfg.dedup_scale;

  RunConfig rcfg = cfg.run;
  if (rcfg.max_iter <= 0) rcfg.max_iter = default_max_iter(d);
  if (rcfg.escape_cap <= 0.0) rcfg.escape_cap = 4.0 * circle_radius(grid, 0);

  ExperimentOutput out{ExperimentReport{}, RootSet(delta), MatchReport{}};
  RootSet& roots = out.roots;

  OrbitStats stats;
  std::mutex stats_mutex;
  std::atomic<std::int64_t> next{0};
  std::atomic<std::int64_t> done{0};

  auto run_one = [&](std::int64_t k) {
    const LaunchPoint lp = launch_point(grid, k);
    const OrbitResult r =
        run_orbit(*fam.model, lp.position, rcfg, &roots, static_cast<std::uint64_t>(k));
    if (r.status == OrbitStatus::converged) {
      roots.insert(r.terminal, r.certificate, k);
    } else if (r.status == OrbitStatus::absorbed) {
      roots.note_hit(static_cast<std::size_t>(r.absorbed_id));
    }
    std::lock_guard guard(stats_mutex);
    stats.add(r);
  };

  int threads = cfg.deterministic ? 1 : cfg.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  if (total > 0 && threads > 1) {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::int64_t k; (k = next.fetch_add(1)) < total;) {
          run_one(k);
          done.fetch_add(1);
        }
      });
    }
    ProgressTicker ticker(cfg.progress_seconds, total);
    while (done.load() < total) {
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
      ticker.maybe_print(done.load(), roots.size());
    }
    for (auto& th : pool) th.join();
  } else {
    ProgressTicker ticker(cfg.progress_seconds, total);
    for (std::int64_t k = 0; k < total; ++k) {
      run_one(k);
      if ((k & 63) == 0) ticker.maybe_print(k + 1, roots.size());
    }
  }

  ExperimentReport& rep = out.report;
  rep.family = fam.descriptor;
  rep.degree = d;
  rep.grid_size = total;
  rep.orbits_run = total;
  rep.status_counts = stats.counts;
  rep.distinct_roots = static_cast<std::int64_t>(roots.size());
  rep.iterations_total = stats.iter_total;
  rep.iterations_mean =
      total > 0 ? static_cast<double>(stats.iter_total) / static_cast<double>(total) : 0.0;
  rep.iterations_max = stats.iter_max;
  for (std::size_t i = 0; i < stats.hist.size(); ++i) {
    rep.iteration_histogram.push_back(HistogramBin{
        std::int64_t{1} << i, std::int64_t{1} << (i + 1), stats.hist[i]});
  }
  rep.endgame_violations = stats.endgame_violations;
  const double dln = static_cast<double>(d) *
                     std::log(static_cast<double>(std::max<std::int64_t>(d, 2)));
  rep.iterations_per_d_ln_d =
      total > 0 ? static_cast<double>(stats.iter_total) / dln : 0.0;

  if (cfg.verify) {
    out.match_detail = roots.match_known(truth, scale);
    MatchSummary summary;
    summary.matched = out.match_detail.matched;
    summary.unmatched = static_cast<std::int64_t>(out.match_detail.unmatched.size());
    summary.spurious = out.match_detail.spurious;
    summary.max_error = out.match_detail.max_error;
    summary.mean_error = out.match_detail.mean_error;
    rep.match = summary;
  }

  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return out;
}

}  // namespace megaroot
