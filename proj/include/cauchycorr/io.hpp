// CSV and JSON encodings of the toolkit's outputs.
//
// CSV: header row, '\n' line ends, numbers in shortest-safe 17 significant
// digit form independent of the process locale.

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cauchycorr/gof.hpp"
#include "cauchycorr/histogram.hpp"
#include "cauchycorr/montecarlo.hpp"

namespace cauchycorr::io {

/// 17 significant digits, '.' decimal point, "inf"/"-inf" for infinities.
std::string format_double(double v);
double parse_double(const std::string& s);

/// Rows bin_lo,bin_hi,count. Underflow and overflow are written as the
/// first and last rows with -inf / inf as the open edge, so the file
/// carries the total.
void write_histogram_csv(std::ostream& out, const mc::Histogram& hist);
/// Inverse of write_histogram_csv. Throws std::runtime_error on missing
/// header, malformed rows, or bins that are not contiguous and equal-width.
mc::Histogram read_histogram_csv(std::istream& in);

nlohmann::json to_json(const mc::SimulationConfig& cfg);
mc::SimulationConfig simulation_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const mc::GofReport& report);
nlohmann::json to_json(const mc::IndependenceReport& report);

}  // namespace cauchycorr::io
