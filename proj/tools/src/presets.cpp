#include "aqc_cli/presets.hpp"

#include <cmath>

#include "aqc/error.hpp"

namespace aqc::cli {

namespace {

json range(double lo, double hi, double step) {
  json v = json::array();
  const int n = int((hi - lo) / step + 0.5);
  for (int k = 0; k <= n; ++k) v.push_back(std::round((lo + k * step) * 1e9) / 1e9);
  return v;
}

json flat_ends(double ei, double ef, double xi, double xf) {
  return {{"type", "flat_ends"}, {"E_i", ei}, {"E_f", ef}, {"x_i", xi}, {"x_f", xf}};
}

// trapped-ion fig. 4 setting
json fig4_base(const std::string& name, const std::string& description) {
  return {{"name", name},
          {"description", description},
          {"kind", "aqc"},
          {"space", {{"dim", 256}, {"hbar_omega", 1.0}, {"kT", 1.0}}},
          {"profile", flat_ends(1.0, 2.0, -4.0, 4.0)},
          {"protocol", {{"family", "coherent"}, {"alpha", 6.0}}},
          {"convergence", {{"dim_doubling", false}}}};
}

struct Entry {
  std::string name;
  std::string description;
  json (*make)();
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {"fig1_thermal_split", "hbar omega_T and its thermal and vacuum parts against chi",
       [] {
         return json{{"name", "fig1_thermal_split"},
                     {"kind", "thermal_split"},
                     {"space", {{"dim", 16}, {"hbar_omega", 1.0}}},
                     {"sweep", {{{"name", "chi"}, {"values", range(0.05, 3.0, 0.05)}}}}};
       }},
      {"fig2_squeezed_q", "q = dE~/W_q for squeezed pairs, r in {-1, 0, 1}, position and momentum displacements",
       [] {
         return json{{"name", "fig2_squeezed_q"},
                     {"kind", "squeezed_q"},
                     {"protocol", {{"alpha_i", 2.0}, {"alpha_f", 1.0}, {"r_values", {-1.0, 0.0, 1.0}}}},
                     {"sweep", {{{"name", "chi"}, {"values", range(0.02, 3.0, 0.02)}}}}};
       }},
      {"fig4_coherent", "error measures D, epsilon, 1-R for coherent pairs alpha_f = -alpha_i",
       [] {
         json j = fig4_base("fig4_coherent", "error measures for coherent pairs");
         j["sweep"] = {{{"name", "alpha"}, {"values", range(1.0, 8.0, 0.5)}}};
         j["output"] = {{"columns", {"alpha", "D", "epsilon", "one_minus_R"}}};
         return j;
       }},
      {"fig4_squeezed", "error measures for squeezed pairs, r = -1 and r = 1",
       [] {
         json j = fig4_base("fig4_squeezed", "error measures for squeezed pairs");
         j["protocol"]["family"] = "squeezed";
         j["sweep"] = {{{"name", "r"}, {"values", {-1.0, 1.0}}}, {{"name", "alpha"}, {"values", range(1.0, 7.0, 0.5)}}};
         j["output"] = {{"columns", {"r", "alpha", "D", "epsilon", "one_minus_R"}}};
         return j;
       }},
      {"fig4_cat", "error measures for straddling and one-sided cat pairs",
       [] {
         json j = fig4_base("fig4_cat", "error measures for cat pairs");
         j["sweep"] = {{{"name", "family"}, {"values", {"symmetric_cat", "one_sided_cat"}}},
                       {{"name", "alpha"}, {"values", range(1.0, 7.0, 0.5)}}};
         j["output"] = {{"columns", {"family", "alpha", "D", "epsilon", "one_minus_R"}}};
         return j;
       }},
      {"fig5_potentials", "q inferred from transition probabilities for flat, sinusoidal and linear splittings",
       [] {
         return json{
             {"name", "fig5_potentials"},
             {"kind", "q_profiles"},
             {"space", {{"dim", 256}, {"hbar_omega", 1.0}}},
             {"profile", flat_ends(1.0, 2.0, -2.0, 2.0)},
             {"profiles",
              {{"flat", flat_ends(1.0, 2.0, -2.0, 2.0)},
               {"sin", {{"type", "sinusoidal"}, {"E_i", 1.0}, {"E_f", 2.0}, {"x_i", -5.0}, {"x_f", 4.0}}},
               {"linear", {{"type", "linear"}, {"E_i", 1.0}, {"E_f", 2.0}, {"x_i", -2.0}, {"x_f", 2.0}}}}},
             {"protocol", {{"family", "coherent"}, {"alpha_i", -5.0}, {"alpha_f", 4.0}}},
             {"sweep", {{{"name", "chi"}, {"values", range(0.1, 1.0, 0.1)}}}},
             {"output", {{"columns", {"chi", "q_flat", "q_sin", "q_linear", "q_analytic"}}}}};
       }},
      {"fig8_wigner", "Wigner function of the excited branch after crossing a steep ramp",
       [] {
         return json{{"name", "fig8_wigner"},
                     {"kind", "wigner"},
                     {"space", {{"dim", 320}, {"hbar_omega", 1.0}, {"kT", 1.0}}},
                     {"profile", flat_ends(1.0, 21.0, -2.0, 2.0)},
                     {"protocol", {{"alpha_i", -9.0}, {"alpha_f", 9.0}}},
                     {"wigner", {{"branch", "excited"}, {"state", "branch"}, {"points", 256}}}};
       }},
      {"identities", "residuals of the six ladder-operator exponential identities",
       [] {
         return json{{"name", "identities"},
                     {"kind", "identities"},
                     {"space", {{"dim", 64}}},
                     {"sweep",
                      {{{"name", "m"}, {"values", {-0.3, -0.1, 0.1, 0.3}}},
                       {{"name", "n"}, {"values", {-0.3, -0.1, 0.1, 0.3}}}}}};
       }},
      {"etilde_suite", "effective potential E~ and its properties for coherent states",
       [] {
         return json{{"name", "etilde_suite"},
                     {"kind", "etilde"},
                     {"space", {{"dim", 128}, {"hbar_omega", 1.0}}},
                     {"sweep",
                      {{{"name", "chi"}, {"values", {0.1, 0.5, 1.0, 2.0}}},
                       {{"name", "alpha"}, {"values", {0.0, 0.5, 1.0, json::array({1.0, 1.0}), 2.0, 3.0}}}}}};
       }},
  };
  return list;
}

}  // namespace

std::vector<PresetInfo> preset_list() {
  std::vector<PresetInfo> out;
  for (const auto& e : entries()) out.push_back({e.name, e.description});
  return out;
}

json preset_json(const std::string& name) {
  std::string known;
  for (const auto& e : entries()) {
    if (e.name == name) return e.make();
    known += (known.empty() ? "" : ", ") + e.name;
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown preset '" + name + "'; available: " + known);
}

ExperimentConfig preset(const std::string& name) { return parse_config(preset_json(name)); }

}  // namespace aqc::cli
