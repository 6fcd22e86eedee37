#pragma once

#include <iosfwd>
#include <string>

#include "megaroot/harness.hpp"

namespace megaroot {

/// Report as a JSON object with stable field order.  wall_seconds is the
/// only field that varies between identical deterministic runs.
std::string report_to_json(const ExperimentReport& report, int indent = 2);

void write_report_json(std::ostream& out, const ExperimentReport& report);

/// Fixed CSV column order (see README); the histogram is one field of
/// "lo:hi:count" triples joined by ';'.
std::string csv_header();
std::string csv_row(const ExperimentReport& report);

std::string histogram_to_string(const std::vector<HistogramBin>& bins);

}  // namespace megaroot
