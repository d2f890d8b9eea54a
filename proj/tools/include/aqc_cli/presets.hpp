#pragma once

#include <string>
#include <vector>

#include "aqc_cli/config.hpp"

namespace aqc::cli {

struct PresetInfo {
  std::string name;
  std::string description;
};

std::vector<PresetInfo> preset_list();
json preset_json(const std::string& name);  // ConfigInvalid lists the known names
ExperimentConfig preset(const std::string& name);

}  // namespace aqc::cli
