#include "aqc_cli/app.hpp"

#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aqc/error.hpp"
#include "aqc_cli/output.hpp"
#include "aqc_cli/presets.hpp"

namespace aqc::cli {

namespace {

struct Flags {
  std::string config;
  std::string preset;
  std::string out;
  std::string format;
  std::optional<int> dim;
  bool convergence = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON experiment config");
  sub->add_option("--preset", f.preset, "built-in config name (see `aqc presets`)");
  sub->add_option("--out", f.out, "output file; stdout when omitted");
  sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--dim", f.dim, "override the Fock-space dimension");
  sub->add_flag("--convergence-check", f.convergence, "rerun each point at twice the dimension");
}

ExperimentConfig resolve(const Flags& f, const std::string& fallback_preset) {
  if (!f.config.empty() && !f.preset.empty()) throw Error(ErrorCode::ConfigInvalid, "give --config or --preset, not both");
  json j;
  if (!f.config.empty())
    j = load_config(f.config).to_json();
  else if (!f.preset.empty())
    j = preset_json(f.preset);
  else if (!fallback_preset.empty())
    j = preset_json(fallback_preset);
  else
    throw Error(ErrorCode::ConfigInvalid, "run needs --config or --preset");
  // flags override file keys
  if (f.dim) j["space"]["dim"] = *f.dim;
  if (f.convergence) j["convergence"]["dim_doubling"] = true;
  if (!f.out.empty()) j["output"]["path"] = f.out;
  if (!f.format.empty()) j["output"]["format"] = f.format;
  return parse_config(j);
}

void report(std::ostream& err, std::string_view category, const std::string& message, int status) {
  json j = {{"error", category}, {"message", message}, {"exit_code", status}};
  err << j.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crooks-equality simulations for an oscillator battery", "aqc"};
  app.require_subcommand(1);

  Flags run_f, id_f, wig_f;
  auto* run = app.add_subcommand("run", "run a config or preset");
  add_common(run, run_f);

  std::string show;
  auto* presets = app.add_subcommand("presets", "list built-in configs, or print one");
  presets->add_option("name", show, "preset to print as JSON");

  auto* identities = app.add_subcommand("identities", "ladder-operator identity residuals");
  add_common(identities, id_f);
  auto* wigner = app.add_subcommand("wigner", "Wigner function on a phase-space grid");
  add_common(wigner, wig_f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    int status = exit_status(ErrorCode::ConfigInvalid);
    report(err, error_name(ErrorCode::ConfigInvalid), e.what(), status);
    return status;
  }

  try {
    if (*presets) {
      if (show.empty()) {
        for (const auto& p : preset_list()) out << p.name << '\t' << p.description << '\n';
      } else {
        out << preset(show).to_json().dump(2) << '\n';
      }
      return 0;
    }
    ExperimentConfig config;
    if (*run) {
      config = resolve(run_f, "");
    } else if (*identities) {
      config = resolve(id_f, "identities");
      if (config.kind != Kind::Identities) throw Error(ErrorCode::ConfigInvalid, "identities needs an identities config");
    } else {
      config = resolve(wig_f, "fig8_wigner");
      if (config.kind != Kind::Wigner) throw Error(ErrorCode::ConfigInvalid, "wigner needs a wigner config");
    }
    ExperimentResult result = run_experiment(config);
    emit(result, out);
    for (const auto& rec : result.records)
      for (const auto& w : rec.warnings) err << "warning: point " << rec.index << ": " << w << '\n';
    return 0;
  } catch (const Error& e) {
    std::string msg = e.what();
    std::string prefix = std::string(error_name(e.code())) + ": ";
    if (msg.starts_with(prefix)) msg.erase(0, prefix.size());
    int status = exit_status(e.code());
    report(err, error_name(e.code()), msg, status);
    return status;
  } catch (const std::exception& e) {
    report(err, "Internal", e.what(), 1);
    return 1;
  }
}

}  // namespace aqc::cli
