#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aqc/phase_space.hpp"
#include "aqc_cli/config.hpp"

namespace aqc::cli {

// monostate marks a field that is undefined (q when W_q = 0)
using Cell = std::variant<std::monostate, double, std::string>;

struct Convergence {
  int dim;       // the doubled dimension
  double delta;  // max |value(dim) - value(2 dim)| over the tracked fields
  bool converged;
};

struct ResultRecord {
  std::size_t index = 0;
  json swept = json::object();
  std::vector<std::pair<std::string, Cell>> values;
  std::optional<Convergence> convergence;
  std::vector<std::string> warnings;
  double seconds = 0.0;

  const Cell* find(const std::string& name) const;
};

struct WignerResult {
  WignerGrid grid;
  json summary;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ResultRecord> records;   // ordered by sweep index
  std::optional<WignerResult> wigner;  // wigner kind only
};

// AQC_WORKERS when set, else the hardware concurrency.
int worker_count();

ResultRecord evaluate_point(const ExperimentConfig& config, const Point& point);
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = worker_count());

}  // namespace aqc::cli
