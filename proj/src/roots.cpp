#include "megaroot/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>

#include "megaroot/errors.hpp"

namespace megaroot {

double dedup_radius(std::int64_t degree, double eps_stop, double scale) {
  if (degree < 1 || !(eps_stop > 0.0) || !(scale > 0.0)) {
    throw config_error("dedup radius arguments must be positive");
  }
  const double ulp = std::nextafter(scale, std::numeric_limits<double>::infinity()) - scale;
  return std::max(static_cast<double>(degree) * eps_stop * scale, 4.0 * ulp);
}

std::size_t RootSet::CellKeyHash::operator()(const CellKey& k) const {
  std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ull;
  h ^= static_cast<std::uint64_t>(k.y) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  h ^= h >> 29;
  h *= 0xBF58476D1CE4E5B9ull;
  h ^= h >> 32;
  return static_cast<std::size_t>(h);
}

RootSet::RootSet(double delta) : delta_(delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw config_error("dedup radius must be positive and finite");
  }
}

RootSet::RootSet(RootSet&& other) : delta_(other.delta_) {
  std::unique_lock lock(other.mutex_);
  records_ = std::move(other.records_);
  cells_ = std::move(other.cells_);
}

RootSet& RootSet::operator=(RootSet&& other) {
  if (this != &other) {
    std::scoped_lock lock(mutex_, other.mutex_);
    delta_ = other.delta_;
    records_ = std::move(other.records_);
    cells_ = std::move(other.cells_);
  }
  return *this;
}

std::int64_t RootSet::cell_of(double v) const {
  double f = std::floor(v / delta_);
  // clamp: extreme coordinates degrade to fat boundary cells, distances
  // still decide everything downstream
  f = std::min(std::max(f, -4.0e18), 4.0e18);
  return static_cast<std::int64_t>(f);
}

bool RootSet::cell_overlaps_disk(CellKey cell, std::complex<double> center,
                                 double radius) const {
  const double x0 = static_cast<double>(cell.x) * delta_;
  const double y0 = static_cast<double>(cell.y) * delta_;
  const double cx = std::min(std::max(center.real(), x0), x0 + delta_);
  const double cy = std::min(std::max(center.imag(), y0), y0 + delta_);
  const double dx = center.real() - cx;
  const double dy = center.imag() - cy;
  return dx * dx + dy * dy <= radius * radius;
}

void RootSet::register_record(std::size_t id, std::complex<double> position) {
  const std::int64_t x_lo = cell_of(position.real() - delta_);
  const std::int64_t x_hi = cell_of(position.real() + delta_);
  const std::int64_t y_lo = cell_of(position.imag() - delta_);
  const std::int64_t y_hi = cell_of(position.imag() + delta_);
  for (std::int64_t x = x_lo; x <= x_hi; ++x) {
    for (std::int64_t y = y_lo; y <= y_hi; ++y) {
      const CellKey key{x, y};
      if (!cell_overlaps_disk(key, position, delta_)) continue;
      cells_[key].push_back(static_cast<std::uint32_t>(id));
    }
  }
}

void RootSet::unregister_record(std::size_t id, std::complex<double> position) {
  const std::int64_t x_lo = cell_of(position.real() - delta_);
  const std::int64_t x_hi = cell_of(position.real() + delta_);
  const std::int64_t y_lo = cell_of(position.imag() - delta_);
  const std::int64_t y_hi = cell_of(position.imag() + delta_);
  for (std::int64_t x = x_lo; x <= x_hi; ++x) {
    for (std::int64_t y = y_lo; y <= y_hi; ++y) {
      const CellKey key{x, y};
      auto it = cells_.find(key);
      if (it == cells_.end()) continue;
      auto& bucket = it->second;
      bucket.erase(std::remove(bucket.begin(), bucket.end(),
                               static_cast<std::uint32_t>(id)),
                   bucket.end());
      if (bucket.empty()) cells_.erase(it);
    }
  }
}

std::optional<RootSet::NearestHit> RootSet::nearest_locked(
    std::complex<double> z, double radius, const std::vector<char>* skip) const {
  return nearest_impl(z, radius, skip, -1);
}

std::optional<RootSet::NearestHit> RootSet::nearest_impl(
    std::complex<double> z, double radius, const std::vector<char>* skip,
    std::int64_t skip_id) const {
  if (records_.empty() || !(radius > 0.0)) return std::nullopt;
  const std::int64_t cx = cell_of(z.real());
  const std::int64_t cy = cell_of(z.imag());
  std::optional<NearestHit> best;

  auto visit_cell = [&](std::int64_t x, std::int64_t y) {
    const CellKey key{x, y};
    if (!cell_overlaps_disk(key, z, radius)) return;
    const auto it = cells_.find(key);
    if (it == cells_.end()) return;
    for (const std::uint32_t id : it->second) {
      if (skip_id >= 0 && id == static_cast<std::uint32_t>(skip_id)) continue;
      if (skip && (*skip)[id]) continue;
      const double dist = std::abs(records_[id].position - z);
      if (dist > radius) continue;
      if (!best || dist < best->distance ||
          (dist == best->distance && id < best->id)) {
        best = NearestHit{id, dist};
      }
    }
  };

  for (std::int64_t ring = 0;; ++ring) {
    // cells on ring r hold no point closer than (r-1)*delta
    const double ring_min = ring == 0 ? 0.0 : (static_cast<double>(ring) - 1.0) * delta_;
    if (ring_min > radius) break;
    if (best && best->distance < ring_min) break;
    if (ring == 0) {
      visit_cell(cx, cy);
      continue;
    }
    for (std::int64_t x = cx - ring; x <= cx + ring; ++x) {
      visit_cell(x, cy - ring);
      visit_cell(x, cy + ring);
    }
    for (std::int64_t y = cy - ring + 1; y <= cy + ring - 1; ++y) {
      visit_cell(cx - ring, y);
      visit_cell(cx + ring, y);
    }
  }
  return best;
}

RootSet::InsertOutcome RootSet::insert(std::complex<double> candidate,
                                       double certificate,
                                       std::int64_t orbit_index) {
  std::unique_lock lock(mutex_);
  const auto hit = nearest_impl(candidate, delta_, nullptr, -1);
  if (hit) {
    RootRecord& rec = records_[hit->id];
    rec.hits += 1;
    if (certificate < rec.certificate) {
      // adopt the better-certified representative, unless moving it would
      // land within delta of another record
      const auto other = nearest_impl(candidate, delta_, nullptr,
                                      static_cast<std::int64_t>(hit->id));
      if (!other) {
        unregister_record(hit->id, rec.position);
        rec.position = candidate;
        rec.certificate = certificate;
        register_record(hit->id, candidate);
      }
    }
    return {InsertKind::merged, hit->id};
  }
  const std::size_t id = records_.size();
  records_.push_back(RootRecord{candidate, certificate, 1, orbit_index});
  register_record(id, candidate);
  return {InsertKind::added, id};
}

void RootSet::note_hit(std::size_t id) {
  std::unique_lock lock(mutex_);
  records_.at(id).hits += 1;
}

std::optional<RootSet::NearestHit> RootSet::nearest(std::complex<double> z,
                                                    double radius) const {
  std::shared_lock lock(mutex_);
  return nearest_impl(z, radius, nullptr, -1);
}

MatchReport RootSet::match_known(std::span<const std::complex<double>> true_roots,
                                 double scale) const {
  std::shared_lock lock(mutex_);
  const double tol = std::max(10.0 * delta_, 1e-8 * scale);
  std::vector<char> claimed(records_.size(), 0);
  MatchReport report;
  double err_sum = 0.0;
  for (const auto& t : true_roots) {
    const auto hit = nearest_impl(t, tol, &claimed, -1);
    if (!hit) {
      report.unmatched.push_back(t);
      continue;
    }
    claimed[hit->id] = 1;
    ++report.matched;
    err_sum += hit->distance;
    report.max_error = std::max(report.max_error, hit->distance);
  }
  report.mean_error = report.matched > 0 ? err_sum / static_cast<double>(report.matched) : 0.0;
  report.spurious = static_cast<std::int64_t>(records_.size()) - report.matched;
  return report;
}

std::size_t RootSet::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

RootRecord RootSet::record(std::size_t id) const {
  std::shared_lock lock(mutex_);
  return records_.at(id);
}

std::vector<RootRecord> RootSet::snapshot() const {
  std::shared_lock lock(mutex_);
  return records_;
}

std::vector<std::pair<std::int64_t, std::int64_t>> RootSet::registered_cells(
    std::size_t id) const {
  std::shared_lock lock(mutex_);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& [key, bucket] : cells_) {
    if (std::find(bucket.begin(), bucket.end(), static_cast<std::uint32_t>(id)) !=
        bucket.end()) {
      out.emplace_back(key.x, key.y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_roots(std::ostream& out, const RootSet& set, std::int64_t degree) {
  const auto records = set.snapshot();
  out << "# megaroot-roots v1 d=" << degree << "\n";
  char buf[160];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %lld\n", r.position.real(),
                  r.position.imag(), r.certificate,
                  static_cast<long long>(r.hits));
    out << buf;
  }
}

}  // namespace megaroot
