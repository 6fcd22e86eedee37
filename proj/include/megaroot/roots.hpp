#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace megaroot {

/// Resolution below which two converged endpoints cannot be told apart:
/// delta = d * eps_stop * scale, clamped below at 4 ulp of the scale.
/// scale is max(1, root bound).
double dedup_radius(std::int64_t degree, double eps_stop, double scale);

struct RootRecord {
  std::complex<double> position{0.0, 0.0};
  double certificate = 0.0;  // d * |p/p'| at the recorded point
  std::int64_t hits = 0;
  std::int64_t first_orbit = 0;
};

struct MatchReport {
  std::int64_t matched = 0;
  double max_error = 0.0;
  double mean_error = 0.0;
  std::vector<std::complex<double>> unmatched;  // true roots with no record
  std::int64_t spurious = 0;                    // records claiming no true root
};

/// Deduplicated set of found roots over a uniform spatial hash with cell
/// size delta.  Any two records are more than delta apart.  insert/note_hit
/// are serialized by an internal writer lock; nearest() runs concurrently
/// under a shared lock, so the absorption path may read while orbits insert.
class RootSet {
 public:
  explicit RootSet(double delta);

  RootSet(RootSet&&);
  RootSet& operator=(RootSet&&);

  enum class InsertKind { added, merged };

  struct InsertOutcome {
    InsertKind kind;
    std::size_t id;
  };

  struct NearestHit {
    std::size_t id;
    double distance;
  };

  /// Merge into the nearest record within delta (keeping the best-certified
  /// representative) or add a new record.  Pairwise separation > delta is
  /// preserved either way.
  InsertOutcome insert(std::complex<double> candidate, double certificate,
                       std::int64_t orbit_index = 0);

  /// Count one more orbit resolved to an existing record (absorption).
  void note_hit(std::size_t id);

  /// Closest record within `radius` of z, examining only hash cells that
  /// overlap the query ball (average O(1) for delta-scale radii).
  std::optional<NearestHit> nearest(std::complex<double> z, double radius) const;

  /// Greedy nearest assignment of records to true roots.  A true root
  /// matches if an unclaimed record lies within max(10 * delta,
  /// 1e-8 * scale); each record matches at most one true root.
  MatchReport match_known(std::span<const std::complex<double>> true_roots,
                          double scale) const;

  double delta() const { return delta_; }
  std::size_t size() const;
  RootRecord record(std::size_t id) const;
  std::vector<RootRecord> snapshot() const;

  /// Hash cells currently holding `id` (for invariant checks).
  std::vector<std::pair<std::int64_t, std::int64_t>> registered_cells(std::size_t id) const;

 private:
  struct CellKey {
    std::int64_t x;
    std::int64_t y;
    bool operator==(const CellKey&) const = default;
  };
  struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const;
  };

  std::int64_t cell_of(double v) const;
  bool cell_overlaps_disk(CellKey cell, std::complex<double> center, double radius) const;
  void register_record(std::size_t id, std::complex<double> position);
  void unregister_record(std::size_t id, std::complex<double> position);
  std::optional<NearestHit> nearest_locked(std::complex<double> z, double radius,
                                           const std::vector<char>* skip) const;
  std::optional<NearestHit> nearest_impl(std::complex<double> z, double radius,
                                         const std::vector<char>* skip,
                                         std::int64_t skip_id) const;

  double delta_;
  std::vector<RootRecord> records_;
  std::unordered_map<CellKey, std::vector<std::uint32_t>, CellKeyHash> cells_;
  mutable std::shared_mutex mutex_;
};

/// Roots output: header "# megaroot-roots v1 d=<degree>", then one record
/// per line, "re im cert hits", 17 significant digits.
void write_roots(std::ostream& out, const RootSet& set, std::int64_t degree);

}  // namespace megaroot
