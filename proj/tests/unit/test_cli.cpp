#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "aqc/error.hpp"
#include "aqc_cli/app.hpp"
#include "aqc_cli/output.hpp"
#include "aqc_cli/presets.hpp"

using namespace aqc;
using namespace aqc::cli;

namespace {

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "aqc");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = run_cli(int(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    out.push_back(l);
  }
  return out;
}

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() / "aqc_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

json small_aqc() {
  return {{"kind", "aqc"},
          {"space", {{"dim", 96}, {"kT", 1.0}}},
          {"profile", {{"type", "flat_ends"}, {"E_i", 1.0}, {"E_f", 2.0}, {"x_i", -4.0}, {"x_f", 4.0}}},
          {"protocol", {{"family", "coherent"}, {"alpha", 2.0}}},
          {"sweep", {{{"name", "alpha"}, {"values", {1.0, 2.0, 3.0}}}}}};
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 5.7109e-3, -2.5, 123456789.125}) {
    std::string s = format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
}

TEST(Config, PresetNamesStable) {
  std::vector<std::string> names;
  for (const auto& p : preset_list()) names.push_back(p.name);
  EXPECT_EQ(names, (std::vector<std::string>{"fig1_thermal_split", "fig2_squeezed_q", "fig4_coherent", "fig4_squeezed",
                                             "fig4_cat", "fig5_potentials", "fig8_wigner", "identities",
                                             "etilde_suite"}));
  for (const auto& n : names) EXPECT_NO_THROW(preset(n)) << n;
}

TEST(Config, UnknownPresetListsNames) {
  try {
    preset("fig9");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
    EXPECT_NE(std::string(e.what()).find("fig5_potentials"), std::string::npos);
  }
}

TEST(Config, EmptySweepAxisRejected) {
  json j = small_aqc();
  j["sweep"][0]["values"] = json::array();
  try {
    parse_config(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
  }
}

TEST(Config, UnknownNamesRejected) {
  json a = small_aqc();
  a["sweep"][0]["name"] = "omega_prime";
  EXPECT_THROW(parse_config(a), Error);
  json b = small_aqc();
  b["protocol"]["alpah"] = 1.0;
  EXPECT_THROW(parse_config(b), Error);
  json c = small_aqc();
  c["profile"]["type"] = "parabola";
  EXPECT_THROW(parse_config(c), Error);
  json d = small_aqc();
  d["output"] = {{"columns", {"alpha", "Q"}}};
  EXPECT_THROW(parse_config(d), Error);
  json e = small_aqc();
  e["space"]["dim"] = 1;
  EXPECT_THROW(parse_config(e), Error);
}

TEST(Config, CartesianSweepOrder) {
  json j = small_aqc();
  j["sweep"].push_back({{"name", "family"}, {"values", {"coherent", "squeezed"}}});
  auto c = parse_config(j);
  ASSERT_EQ(point_count(c), 6u);
  auto p = resolve_point(c, 3);  // alpha = 2, family = squeezed
  EXPECT_EQ(p.family, "squeezed");
  EXPECT_EQ(p.alpha_f, cplx(2.0));
  EXPECT_EQ(p.alpha_i, cplx(-2.0));
}

TEST(Config, ChiSetsTemperature) {
  json j = small_aqc();
  j["sweep"] = {{{"name", "chi"}, {"values", {0.25}}}};
  auto p = resolve_point(parse_config(j), 0);
  EXPECT_DOUBLE_EQ(p.kT, 2.0);
  EXPECT_DOUBLE_EQ(p.chi(), 0.25);
}

TEST(Config, ProfileRoundTrip) {
  for (SplittingProfile prof : {SplittingProfile{FlatEnds{1, 2, -4, 4}}, SplittingProfile{Sinusoidal{1, 2, -5, 4}},
                                SplittingProfile{Linear{0, 1, -1, 1}},
                                SplittingProfile{Tabulated{{{-1.0, 0.0}, {1.0, 2.0}}}}}) {
    json j = profile_to_json(prof);
    EXPECT_EQ(profile_to_json(profile_from_json(j)), j);
  }
}

TEST(Config, ResolvedConfigReparses) {
  for (const auto& p : preset_list()) {
    auto c = preset(p.name);
    auto again = parse_config(c.to_json());
    EXPECT_EQ(again.to_json(), c.to_json()) << p.name;
  }
}

TEST(Runner, OrderIndependentOfWorkers) {
  auto c = parse_config(small_aqc());
  auto one = run_experiment(c, 1), many = run_experiment(c, 3);
  std::ostringstream a, b;
  write_csv(a, one);
  write_csv(b, many);
  EXPECT_EQ(a.str(), b.str());
  auto rows = lines(a.str());
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].substr(0, 18), "alpha,P_fwd,P_rev,");
  EXPECT_EQ(rows[1].substr(0, 2), "1,");
  EXPECT_EQ(rows[3].substr(0, 2), "3,");
}

TEST(Runner, UndefinedQTagged) {
  auto c = parse_config(small_aqc());
  auto r = run_experiment(c, 2);
  const Cell* q = r.records[0].find("q_predicted");
  ASSERT_NE(q, nullptr);
  EXPECT_TRUE(std::holds_alternative<std::monostate>(*q));
  EXPECT_EQ(to_json(r)["records"][0]["values"]["q_predicted"], "undefined");
}

TEST(Runner, ConvergenceCheck) {
  json j = small_aqc();
  j["convergence"] = {{"dim_doubling", true}};
  auto r = run_experiment(parse_config(j), 2);
  for (const auto& rec : r.records) {
    ASSERT_TRUE(rec.convergence.has_value());
    EXPECT_EQ(rec.convergence->dim, 192);
    EXPECT_TRUE(rec.convergence->converged) << rec.convergence->delta;
  }
}

TEST(Runner, WorkerEnvValidated) {
  setenv("AQC_WORKERS", "2", 1);
  EXPECT_GE(worker_count(), 1);
  EXPECT_LE(worker_count(), 2);
  setenv("AQC_WORKERS", "zero", 1);
  EXPECT_THROW(worker_count(), Error);
  unsetenv("AQC_WORKERS");
}

TEST(App, PresetsSubcommand) {
  auto r = invoke({"presets"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out).size(), 9u);
  auto show = invoke({"presets", "fig4_coherent"});
  EXPECT_EQ(show.status, 0);
  EXPECT_EQ(json::parse(show.out)["kind"], "aqc");
}

TEST(App, UnknownPresetIsMachineReadable) {
  auto r = invoke({"run", "--preset", "nope"});
  EXPECT_EQ(r.status, exit_status(ErrorCode::ConfigInvalid));
  auto j = json::parse(r.err);
  EXPECT_EQ(j["error"], "ConfigInvalid");
  EXPECT_NE(j["message"].get<std::string>().find("fig1_thermal_split"), std::string::npos);
}

TEST(App, MissingConfigFileIsIOFailure) {
  auto r = invoke({"run", "--config", "/nonexistent/config.json"});
  EXPECT_EQ(r.status, exit_status(ErrorCode::IOFailure));
  EXPECT_EQ(json::parse(r.err)["error"], "IOFailure");
}

TEST(App, TruncationPropagates) {
  auto r = invoke({"run", "--preset", "fig4_coherent", "--dim", "16"});
  EXPECT_EQ(r.status, exit_status(ErrorCode::TruncationInsufficient));
}

TEST(App, ConfigFileWithFlagOverrides) {
  auto dir = temp_dir();
  auto cfg = dir / "cfg.json";
  std::ofstream(cfg) << small_aqc().dump();
  auto out = dir / "res.csv";
  auto r = invoke({"run", "--config", cfg.string(), "--dim", "128", "--out", out.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  std::ifstream side(sidecar_path(out));
  json s = json::parse(side);
  EXPECT_EQ(s["config"]["space"]["dim"], 128);
  std::stringstream body;
  body << std::ifstream(out).rdbuf();
  EXPECT_EQ(lines(body.str()).size(), 4u);
}

TEST(App, Fig4PresetColumnsAndDeterminism) {
  auto dir = temp_dir();
  auto a = invoke({"run", "--preset", "fig4_coherent"});
  auto b = invoke({"run", "--preset", "fig4_coherent"});
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  auto rows = lines(a.out);
  EXPECT_EQ(rows[0], "alpha,D,epsilon,one_minus_R");
  EXPECT_EQ(rows.size(), 16u);
}

TEST(App, Fig5PresetColumns) {
  auto r = invoke({"run", "--preset", "fig5_potentials", "--format", "csv"});
  ASSERT_EQ(r.status, 0);
  auto rows = lines(r.out);
  EXPECT_EQ(rows[0], "chi,q_flat,q_sin,q_linear,q_analytic");
  EXPECT_EQ(rows.size(), 11u);
}

TEST(App, JsonFormat) {
  auto r = invoke({"run", "--preset", "fig1_thermal_split", "--format", "json"});
  ASSERT_EQ(r.status, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["records"].size(), 60u);
  EXPECT_EQ(j["config"]["name"], "fig1_thermal_split");
  EXPECT_TRUE(j["records"][0]["values"].contains("hbar_omega_T"));
}

TEST(App, WignerCsv) {
  auto dir = temp_dir();
  auto out = dir / "w.csv";
  auto r = invoke({"wigner", "--out", out.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "x,p,W\r");
  json s = json::parse(std::ifstream(sidecar_path(out)));
  EXPECT_LT(s["summary"]["min_value"].get<double>(), 0.0);
}

TEST(App, BadFlagIsConfigInvalid) {
  auto r = invoke({"run", "--format", "xml", "--preset", "fig4_coherent"});
  EXPECT_EQ(r.status, exit_status(ErrorCode::ConfigInvalid));
}
