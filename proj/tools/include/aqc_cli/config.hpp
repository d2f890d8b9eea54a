#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aqc/phase_space.hpp"
#include "aqc/splitting.hpp"

namespace aqc::cli {

using json = nlohmann::json;

enum class Kind { Aqc, QProfiles, SqueezedQ, ThermalSplit, Wigner, Identities, ETilde };

std::string kind_name(Kind kind);

// Names a sweep axis may refer to.
const std::vector<std::string>& parameter_names();

json profile_to_json(const SplittingProfile& profile);
SplittingProfile profile_from_json(const json& j);

struct SweepAxis {
  std::string name;
  std::vector<json> values;
};

struct OutputSpec {
  std::optional<std::string> path;
  std::string format = "csv";  // csv | json
  std::vector<std::string> columns;  // empty: every column
  bool timing = false;
};

// Sections of the file are kept as normalized JSON; resolve_point turns one
// sweep index into typed values.
struct ExperimentConfig {
  std::string name;
  std::string description;
  Kind kind = Kind::Aqc;
  json space;
  json profile;
  json profiles;  // q_profiles only: name -> profile
  json protocol;
  json wigner;
  std::vector<SweepAxis> sweep;
  OutputSpec output;
  bool dim_doubling = false;

  json to_json() const;
};

ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::string& path);

struct Point {
  std::size_t index = 0;
  json swept = json::object();

  int dim = 256;
  double hbar_omega = 1.0;
  double kT = 1.0;
  SplittingProfile profile = FlatEnds{1.0, 2.0, -4.0, 4.0};
  std::vector<std::pair<std::string, SplittingProfile>> profiles;
  OperatorMethod method = OperatorMethod::Galerkin;

  std::optional<double> tau;
  std::string family = "coherent";
  cplx alpha_i = -6.0;
  cplx alpha_f = 6.0;
  double r = 0.0;
  double shift = 1.0;
  std::vector<double> r_values{-1.0, 0.0, 1.0};
  double m = 0.1;
  double n = 0.1;

  // wigner
  std::string branch = "excited";
  std::string state = "branch";
  int points = 512;
  std::optional<GridSpec> grid;

  FockSpace space() const { return {dim, hbar_omega, kT}; }
  double chi() const { return hbar_omega / (2.0 * kT); }
  double tau_or_default() const;
};

std::size_t point_count(const ExperimentConfig& config);
Point resolve_point(const ExperimentConfig& config, std::size_t index);

// Swept parameters first, then the kind's result columns.
std::vector<std::string> result_columns(const ExperimentConfig& config);
std::vector<std::string> sweep_names(const ExperimentConfig& config);

}  // namespace aqc::cli
