#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "aqc_cli/runner.hpp"

namespace aqc::cli {

// Shortest text that parses back to the same double.
std::string format_double(double v);

void write_csv(std::ostream& out, const ExperimentResult& result);
json to_json(const ExperimentResult& result);

// <stem>.config.json next to a CSV output
std::filesystem::path sidecar_path(const std::filesystem::path& out);

// Writes to config.output.path (plus the sidecar for CSV) or to `fallback`.
void emit(const ExperimentResult& result, std::ostream& fallback);

}  // namespace aqc::cli
