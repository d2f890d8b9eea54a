#include "aqc_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "aqc/error.hpp"

namespace aqc::cli {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::ConfigInvalid, msg); }

const std::vector<std::pair<Kind, std::string>> kKinds = {
    {Kind::Aqc, "aqc"},
    {Kind::QProfiles, "q_profiles"},
    {Kind::SqueezedQ, "squeezed_q"},
    {Kind::ThermalSplit, "thermal_split"},
    {Kind::Wigner, "wigner"},
    {Kind::Identities, "identities"},
    {Kind::ETilde, "etilde"},
};

const std::set<std::string> kFamilies = {"coherent", "squeezed", "symmetric_cat", "one_sided_cat"};
const std::set<std::string> kSpaceKeys = {"dim", "hbar_omega", "kT", "chi"};
const std::set<std::string> kProtocolKeys = {"tau", "family", "alpha", "alpha_i", "alpha_f", "r",
                                             "shift", "r_values", "m", "n", "method"};
const std::set<std::string> kWignerKeys = {"branch", "state", "points", "x_min", "x_max", "p_min", "p_max"};
const std::set<std::string> kTopKeys = {"name", "description", "kind", "space", "profile", "profiles",
                                        "protocol", "wigner", "sweep", "output", "convergence"};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) invalid(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) invalid("unknown key '" + k + "' in " + where);
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) invalid(what + " must be a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) invalid(what + " must be finite");
  return v;
}

cplx complex_value(const json& j, const std::string& what) {
  if (j.is_number()) return {number(j, what), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], what), number(j[1], what)};
  invalid(what + " must be a number or [re, im]");
}

int integer(const json& j, const std::string& what) {
  double v = number(j, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) invalid(what + " must be an integer");
  return int(v);
}

std::string text(const json& j, const std::string& what) {
  if (!j.is_string()) invalid(what + " must be a string");
  return j.get<std::string>();
}

bool has_ends(const json& p) { return p.is_object() && p.value("type", "") != "tabulated"; }

// Writes one named parameter into the sections it controls.
void set_parameter(ExperimentConfig& c, const std::string& name, const json& value) {
  if (name == "dim" || name == "hbar_omega") {
    c.space[name] = value;
  } else if (name == "kT") {
    c.space.erase("chi");
    c.space["kT"] = value;
  } else if (name == "chi") {
    c.space.erase("kT");
    c.space["chi"] = value;
  } else if (name == "E_i" || name == "E_f" || name == "x_i" || name == "x_f") {
    if (has_ends(c.profile)) c.profile[name] = value;
    for (auto& [k, p] : c.profiles.items())
      if (has_ends(p)) p[name] = value;
  } else if (name == "alpha") {
    c.protocol.erase("alpha_i");
    c.protocol.erase("alpha_f");
    c.protocol["alpha"] = value;
  } else if (name == "alpha_i" || name == "alpha_f") {
    if (c.protocol.contains("alpha")) {
      json a = c.protocol["alpha"];
      c.protocol.erase("alpha");
      c.protocol["alpha_i"] = a.is_number() ? json(-a.get<double>()) : json::array({-a[0].get<double>(), -a[1].get<double>()});
      c.protocol["alpha_f"] = a;
    }
    c.protocol[name] = value;
  } else {
    c.protocol[name] = value;
  }
}

json default_protocol() {
  return {{"tau", nullptr}, {"family", "coherent"}, {"alpha_i", -6.0}, {"alpha_f", 6.0}, {"r", 0.0},
          {"shift", 1.0},   {"r_values", {-1.0, 0.0, 1.0}}, {"m", 0.1}, {"n", 0.1}, {"method", "galerkin"}};
}

std::string r_label(double r) {
  std::string s = json(r).dump();
  if (s.size() > 2 && s.ends_with(".0")) s.resize(s.size() - 2);
  return s;
}

}  // namespace

std::string kind_name(Kind kind) {
  for (const auto& [k, n] : kKinds)
    if (k == kind) return n;
  return "?";
}

const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> names = {"alpha", "alpha_i", "alpha_f", "r",   "chi", "kT",
                                                 "tau",   "dim",     "E_i",     "E_f", "x_i", "x_f",
                                                 "family", "hbar_omega", "shift", "m", "n"};
  return names;
}

json profile_to_json(const SplittingProfile& profile) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Tabulated>) {
          json s = json::array();
          for (auto [x, e] : p.samples) s.push_back({x, e});
          return {{"type", "tabulated"}, {"samples", s}};
        } else {
          const char* type = std::is_same_v<T, FlatEnds> ? "flat_ends" : std::is_same_v<T, Sinusoidal> ? "sinusoidal" : "linear";
          return {{"type", type}, {"E_i", p.E_i}, {"E_f", p.E_f}, {"x_i", p.x_i}, {"x_f", p.x_f}};
        }
      },
      profile);
}

SplittingProfile profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) invalid("profile needs a 'type'");
  const std::string type = text(j["type"], "profile.type");
  SplittingProfile out;
  if (type == "tabulated") {
    check_keys(j, {"type", "samples"}, "profile");
    if (!j.contains("samples") || !j["samples"].is_array()) invalid("tabulated profile needs 'samples'");
    Tabulated t;
    for (const auto& s : j["samples"]) {
      if (!s.is_array() || s.size() != 2) invalid("tabulated samples are [x, E] pairs");
      t.samples.emplace_back(number(s[0], "sample x"), number(s[1], "sample E"));
    }
    out = t;
  } else {
    check_keys(j, {"type", "E_i", "E_f", "x_i", "x_f"}, "profile");
    for (const char* k : {"E_i", "E_f", "x_i", "x_f"})
      if (!j.contains(k)) invalid(std::string("profile is missing '") + k + "'");
    double ei = number(j["E_i"], "E_i"), ef = number(j["E_f"], "E_f");
    double xi = number(j["x_i"], "x_i"), xf = number(j["x_f"], "x_f");
    if (type == "flat_ends")
      out = FlatEnds{ei, ef, xi, xf};
    else if (type == "sinusoidal")
      out = Sinusoidal{ei, ef, xi, xf};
    else if (type == "linear")
      out = Linear{ei, ef, xi, xf};
    else
      invalid("unknown profile type '" + type + "' (flat_ends, sinusoidal, linear, tabulated)");
  }
  validate_profile(out);
  return out;
}

json ExperimentConfig::to_json() const {
  json j;
  j["name"] = name;
  if (!description.empty()) j["description"] = description;
  j["kind"] = kind_name(kind);
  j["space"] = space;
  j["profile"] = profile;
  if (kind == Kind::QProfiles) j["profiles"] = profiles;
  j["protocol"] = protocol;
  if (kind == Kind::Wigner) j["wigner"] = wigner;
  json s = json::array();
  for (const auto& a : sweep) s.push_back({{"name", a.name}, {"values", a.values}});
  j["sweep"] = s;
  json o = {{"format", output.format}, {"timing", output.timing}};
  o["path"] = output.path ? json(*output.path) : json(nullptr);
  if (!output.columns.empty()) o["columns"] = output.columns;
  j["output"] = o;
  j["convergence"] = {{"dim_doubling", dim_doubling}};
  return j;
}

ExperimentConfig parse_config(const json& j) {
  check_keys(j, kTopKeys, "config");
  ExperimentConfig c;
  c.name = j.contains("name") ? text(j["name"], "name") : "custom";
  if (j.contains("description")) c.description = text(j["description"], "description");

  const std::string kind = j.contains("kind") ? text(j["kind"], "kind") : "aqc";
  auto it = std::find_if(kKinds.begin(), kKinds.end(), [&](const auto& p) { return p.second == kind; });
  if (it == kKinds.end()) invalid("unknown kind '" + kind + "'");
  c.kind = it->first;

  c.space = {{"dim", 256}, {"hbar_omega", 1.0}, {"kT", 1.0}};
  if (j.contains("space")) {
    check_keys(j["space"], kSpaceKeys, "space");
    if (j["space"].contains("kT") && j["space"].contains("chi")) invalid("space: give kT or chi, not both");
    for (const auto& [k, v] : j["space"].items()) set_parameter(c, k, v);
  }

  c.profile = j.contains("profile") ? j["profile"] : profile_to_json(FlatEnds{1.0, 2.0, -4.0, 4.0});
  profile_from_json(c.profile);
  c.profiles = json::object();
  if (j.contains("profiles")) {
    if (!j["profiles"].is_object() || j["profiles"].empty()) invalid("profiles must be a non-empty object");
    for (const auto& [k, p] : j["profiles"].items()) {
      profile_from_json(p);
      c.profiles[k] = p;
    }
  }
  if (c.kind == Kind::QProfiles && c.profiles.empty()) invalid("q_profiles needs a 'profiles' object");

  c.protocol = default_protocol();
  if (j.contains("protocol")) {
    check_keys(j["protocol"], kProtocolKeys, "protocol");
    if (j["protocol"].contains("alpha") &&
        (j["protocol"].contains("alpha_i") || j["protocol"].contains("alpha_f")))
      invalid("protocol: give alpha or alpha_i/alpha_f, not both");
    for (const auto& [k, v] : j["protocol"].items()) set_parameter(c, k, v);
  }

  c.wigner = {{"branch", "excited"}, {"state", "branch"}, {"points", 512}};
  if (j.contains("wigner")) {
    check_keys(j["wigner"], kWignerKeys, "wigner");
    for (const auto& [k, v] : j["wigner"].items()) c.wigner[k] = v;
  }

  if (j.contains("sweep")) {
    if (!j["sweep"].is_array()) invalid("sweep must be a list of axes");
    std::set<std::string> seen;
    for (const auto& a : j["sweep"]) {
      check_keys(a, {"name", "values"}, "sweep axis");
      if (!a.contains("name")) invalid("sweep axis needs a name");
      SweepAxis axis{text(a["name"], "sweep name"), {}};
      const auto& names = parameter_names();
      if (std::find(names.begin(), names.end(), axis.name) == names.end())
        invalid("unknown sweep parameter '" + axis.name + "'");
      if (!seen.insert(axis.name).second) invalid("parameter '" + axis.name + "' swept twice");
      if (!a.contains("values") || !a["values"].is_array() || a["values"].empty())
        invalid("sweep axis '" + axis.name + "' has no values");
      for (const auto& v : a["values"]) axis.values.push_back(v);
      c.sweep.push_back(std::move(axis));
    }
  }
  if (c.kind == Kind::Wigner && !c.sweep.empty()) invalid("wigner runs take no sweep");

  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, {"path", "format", "columns", "timing"}, "output");
    if (o.contains("path") && !o["path"].is_null()) c.output.path = text(o["path"], "output.path");
    if (o.contains("format")) c.output.format = text(o["format"], "output.format");
    if (o.contains("timing")) {
      if (!o["timing"].is_boolean()) invalid("output.timing must be true or false");
      c.output.timing = o["timing"].get<bool>();
    }
    if (o.contains("columns")) {
      if (!o["columns"].is_array()) invalid("output.columns must be a list");
      for (const auto& col : o["columns"]) c.output.columns.push_back(text(col, "column"));
    }
  }
  if (c.output.format != "csv" && c.output.format != "json") invalid("output.format must be csv or json");

  if (j.contains("convergence")) {
    check_keys(j["convergence"], {"dim_doubling"}, "convergence");
    if (j["convergence"].contains("dim_doubling")) {
      if (!j["convergence"]["dim_doubling"].is_boolean()) invalid("dim_doubling must be true or false");
      c.dim_doubling = j["convergence"]["dim_doubling"].get<bool>();
    }
  }

  // every point must resolve before anything runs
  const std::size_t total = point_count(c);
  for (std::size_t i = 0; i < total; ++i) resolve_point(c, i);

  if (!c.output.columns.empty()) {
    auto cols = result_columns(c);
    for (const auto& col : c.output.columns)
      if (std::find(cols.begin(), cols.end(), col) == cols.end()) invalid("unknown output column '" + col + "'");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IOFailure, "cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    invalid("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

std::size_t point_count(const ExperimentConfig& config) {
  std::size_t n = 1;
  for (const auto& a : config.sweep) n *= a.values.size();
  return n;
}

double Point::tau_or_default() const { return tau ? *tau : std::numbers::pi / hbar_omega; }

Point resolve_point(const ExperimentConfig& config, std::size_t index) {
  if (index >= point_count(config)) invalid("sweep index out of range");
  ExperimentConfig c = config;
  Point p;
  p.index = index;
  // first axis outermost
  std::size_t rem = index;
  std::vector<std::size_t> pos(c.sweep.size());
  for (std::size_t k = c.sweep.size(); k-- > 0;) {
    pos[k] = rem % c.sweep[k].values.size();
    rem /= c.sweep[k].values.size();
  }
  for (std::size_t k = 0; k < c.sweep.size(); ++k) {
    const json& v = c.sweep[k].values[pos[k]];
    set_parameter(c, c.sweep[k].name, v);
    p.swept[c.sweep[k].name] = v;
  }

  const json& s = c.space;
  p.dim = integer(s["dim"], "dim");
  p.hbar_omega = number(s["hbar_omega"], "hbar_omega");
  if (s.contains("chi")) {
    double chi = number(s["chi"], "chi");
    if (!(chi > 0.0)) invalid("chi must be > 0");
    p.kT = p.hbar_omega / (2.0 * chi);
  } else {
    p.kT = number(s["kT"], "kT");
  }
  (void)p.space();  // validates dim, hbar_omega, kT

  p.profile = profile_from_json(c.profile);
  for (const auto& [k, v] : c.profiles.items()) p.profiles.emplace_back(k, profile_from_json(v));

  const json& pr = c.protocol;
  if (!pr["tau"].is_null()) {
    p.tau = number(pr["tau"], "tau");
    if (*p.tau < 0.0) invalid("tau must be >= 0");
  }
  p.family = text(pr["family"], "family");
  if (!kFamilies.count(p.family))
    invalid("unknown family '" + p.family + "' (coherent, squeezed, symmetric_cat, one_sided_cat)");
  if (pr.contains("alpha")) {
    p.alpha_f = complex_value(pr["alpha"], "alpha");
    p.alpha_i = -p.alpha_f;
  } else {
    p.alpha_i = complex_value(pr["alpha_i"], "alpha_i");
    p.alpha_f = complex_value(pr["alpha_f"], "alpha_f");
  }
  p.r = number(pr["r"], "r");
  p.shift = number(pr["shift"], "shift");
  if (!pr["r_values"].is_array() || pr["r_values"].empty()) invalid("r_values must be a non-empty list");
  p.r_values.clear();
  for (const auto& v : pr["r_values"]) p.r_values.push_back(number(v, "r_values"));
  p.m = number(pr["m"], "m");
  p.n = number(pr["n"], "n");
  const std::string method = text(pr["method"], "method");
  if (method == "galerkin")
    p.method = OperatorMethod::Galerkin;
  else if (method == "spectral")
    p.method = OperatorMethod::SpectralCalculus;
  else
    invalid("method must be galerkin or spectral");

  const json& w = c.wigner;
  p.branch = text(w["branch"], "wigner.branch");
  if (p.branch != "excited" && p.branch != "ground") invalid("wigner.branch must be excited or ground");
  p.state = text(w["state"], "wigner.state");
  if (p.state != "branch" && p.state != "coherent_approximation" && p.state != "prepared")
    invalid("wigner.state must be branch, coherent_approximation or prepared");
  p.points = integer(w["points"], "wigner.points");
  if (p.points < 2 || p.points > 8192) invalid("wigner.points must be in [2, 8192]");
  int box = 0;
  for (const char* k : {"x_min", "x_max", "p_min", "p_max"}) box += w.contains(k);
  if (box != 0 && box != 4) invalid("wigner window needs all of x_min, x_max, p_min, p_max");
  if (box == 4)
    p.grid = GridSpec{p.points,         p.points, number(w["x_min"], "x_min"), number(w["x_max"], "x_max"),
                      number(w["p_min"], "p_min"), number(w["p_max"], "p_max")};
  return p;
}

std::vector<std::string> sweep_names(const ExperimentConfig& config) {
  std::vector<std::string> out;
  for (const auto& a : config.sweep) out.push_back(a.name);
  return out;
}

std::vector<std::string> result_columns(const ExperimentConfig& config) {
  std::vector<std::string> cols = sweep_names(config);
  auto add = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) cols.emplace_back(n);
  };
  switch (config.kind) {
    case Kind::Aqc:
      add({"P_fwd", "P_rev", "D", "epsilon_i", "epsilon_f", "epsilon", "R", "one_minus_R", "delta_F",
           "delta_E_tilde", "predicted_ratio", "W_q", "q_predicted", "q_inferred"});
      break;
    case Kind::QProfiles:
      for (const auto& [k, v] : config.profiles.items()) cols.push_back("q_" + k);
      add({"q_analytic"});
      break;
    case Kind::SqueezedQ: {
      Point p = resolve_point(config, 0);
      for (const char* axis : {"position", "momentum"})
        for (double r : p.r_values) cols.push_back(std::string("q_") + axis + "_r" + r_label(r));
      add({"q_analytic"});
      break;
    }
    case Kind::ThermalSplit:
      add({"hbar_omega_T", "thermal_part", "vacuum_part"});
      break;
    case Kind::Wigner:
      add({"x", "p", "W"});
      break;
    case Kind::Identities:
      add({"identity_1", "identity_2", "identity_3", "identity_4", "identity_5", "identity_6", "max_residual"});
      break;
    case Kind::ETilde:
      add({"E_tilde", "E_tilde_closed_form", "mean_energy", "shift_residual", "scale_residual", "eigenstate_residual",
           "high_T_gap", "phase_residual", "bound_gap"});
      break;
  }
  return cols;
}

}  // namespace aqc::cli
