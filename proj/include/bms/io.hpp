#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bms/clusterer.hpp"
#include "bms/configuration.hpp"
#include "bms/engine.hpp"
#include "bms/oracles.hpp"

namespace bms::io {

enum class PointFormat { automatic, csv, json };

// CSV with d numeric columns (a non-numeric first row is taken as a header)
// or a JSON array of arrays. `automatic` picks JSON for *.json.
// Errors: ParseError with 1-based row/column, DataError for missing files.
Configuration load_points(const std::filesystem::path& path,
                          PointFormat format = PointFormat::automatic);
Configuration parse_csv(std::string_view text);
Configuration parse_json(std::string_view text);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// One JSON object per line:
// {"t":..,"L":..,"d":..,"rho":..,"max_move":..,"M":..,"closed":..,"singular":..,"stable":..}
std::string trace_line(const IterationRecord& rec);
void write_trace(std::ostream& out, const std::vector<IterationRecord>& records);
// Throws Error naming the path on I/O failure. Empty record list -> empty file.
void emit_trace(const std::vector<IterationRecord>& records, const std::filesystem::path& path);

IterationRecord parse_trace_line(std::string_view line);

// {labels, representatives, T, M, stop_reason, h, kernel}
std::string cluster_result_json(const ClusterResult& result, double h, std::string_view kernel);

// t,r_oracle,r_sim,ratio
std::string simplex_csv(const SimplexComparison& cmp);

std::string sweep_csv(const std::vector<SweepRow>& rows);

// Writes text to path, or stdout when path is empty or "-".
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace bms::io
