#include "megaroot/report_io.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace megaroot {

namespace {

std::string triple(const HistogramBin& bin) {
  return std::to_string(bin.lo) + ":" + std::to_string(bin.hi) + ":" +
         std::to_string(bin.count);
}

nlohmann::ordered_json to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["family"] = r.family;
  j["degree"] = r.degree;
  j["grid_size"] = r.grid_size;
  j["orbits_run"] = r.orbits_run;
  nlohmann::ordered_json counts;
  counts["converged"] = r.status_counts.converged;
  counts["absorbed"] = r.status_counts.absorbed;
  counts["max_iter_exceeded"] = r.status_counts.max_iter_exceeded;
  counts["escaped"] = r.status_counts.escaped;
  j["status_counts"] = std::move(counts);
  j["distinct_roots"] = r.distinct_roots;
  j["iterations_total"] = r.iterations_total;
  j["iterations_mean"] = r.iterations_mean;
  j["iterations_max"] = r.iterations_max;
  auto hist = nlohmann::ordered_json::array();
  for (const auto& bin : r.iteration_histogram) hist.push_back(triple(bin));
  j["iteration_histogram"] = std::move(hist);
  j["endgame_violations"] = r.endgame_violations;
  j["wall_seconds"] = r.wall_seconds;
  j["iterations_per_d_ln_d"] = r.iterations_per_d_ln_d;
  if (r.match) {
    nlohmann::ordered_json m;
    m["matched"] = r.match->matched;
    m["unmatched"] = r.match->unmatched;
    m["spurious"] = r.match->spurious;
    m["max_error"] = r.match->max_error;
    m["mean_error"] = r.match->mean_error;
    j["match_report"] = std::move(m);
  }
  return j;
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string report_to_json(const ExperimentReport& report, int indent) {
  return to_json(report).dump(indent);
}

void write_report_json(std::ostream& out, const ExperimentReport& report) {
  out << report_to_json(report) << "\n";
}

std::string histogram_to_string(const std::vector<HistogramBin>& bins) {
  std::string s;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (i) s += ';';
    s += triple(bins[i]);
  }
  return s;
}

std::string csv_header() {
  return "family,degree,grid_size,orbits_run,converged,absorbed,"
         "max_iter_exceeded,escaped,distinct_roots,iterations_total,"
         "iterations_mean,iterations_max,endgame_violations,wall_seconds,"
         "iterations_per_d_ln_d,matched,unmatched,spurious,max_error,"
         "mean_error,iteration_histogram";
}

std::string csv_row(const ExperimentReport& r) {
  std::ostringstream row;
  row << '"' << r.family << '"' << ',' << r.degree << ',' << r.grid_size << ','
      << r.orbits_run << ',' << r.status_counts.converged << ','
      << r.status_counts.absorbed << ',' << r.status_counts.max_iter_exceeded
      << ',' << r.status_counts.escaped << ',' << r.distinct_roots << ','
      << r.iterations_total << ',' << format_double(r.iterations_mean) << ','
      << r.iterations_max << ',' << r.endgame_violations << ','
      << format_double(r.wall_seconds) << ','
      << format_double(r.iterations_per_d_ln_d) << ',';
  if (r.match) {
    row << r.match->matched << ',' << r.match->unmatched << ','
        << r.match->spurious << ',' << format_double(r.match->max_error) << ','
        << format_double(r.match->mean_error);
  } else {
    row << ",,,,";
  }
  row << ',' << histogram_to_string(r.iteration_histogram);
  return row.str();
}

}  // namespace megaroot
