#pragma once

#include <ostream>

namespace aqc::cli {

// Entry point of the `aqc` executable; returns the process exit status.
// Failures are reported on `err` as one JSON object.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aqc::cli
