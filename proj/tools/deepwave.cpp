// deepwave: particle paths beneath small-amplitude deep-water waves.
//
//   deepwave dispersion --k 1,2,4 --g 9.8 --a 0.1
//   deepwave trajectory --k 1 --beta 1 --t-end 10 --out path.csv --svg path.svg
//   deepwave stagnation --k 1 --beta 1
//   deepwave validate --config configs/k1_case1.cfg
//   deepwave field --k 1 --x 0 --z -0.5 --t 0
//
// Exit codes: 0 success, 2 usage, 3 domain/classification error, 4 validation failure.
// Errors are printed as a single line `error: <Code>: <message>`.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deepwave/commands.hpp"

namespace {

using deepwave::Error;
using deepwave::ErrorCode;

const std::vector<std::string> kFlags = {
    "k",     "a",     "g",      "beta", "direction", "p0",    "rho",       "t-start",    "t-end",
    "samples", "solution", "const1", "const2", "t0", "x0", "z0", "out", "format", "svg", "svg-width",
    "svg-height", "svg-margin", "z-min", "z-max", "grid", "x", "z", "t"};

struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config;
};

void add_flags(CLI::App* cmd, FlagSet& fs) {
  for (const auto& name : kFlags) {
    fs.options[name] = cmd->add_option("--" + name, fs.values[name]);
  }
  cmd->add_option("--config", fs.config, "flat key = value file; flags override it (fallback: $DEEPWAVE_CONFIG)");
}

deepwave::ScenarioConfig resolve(const FlagSet& fs) {
  deepwave::io::KeyValues file;
  std::string path = fs.config;
  if (path.empty()) {
    if (const char* env = std::getenv("DEEPWAVE_CONFIG"); env && *env) path = env;
  }
  if (!path.empty()) file = deepwave::io::load_key_values(path);
  deepwave::io::KeyValues flags;
  for (const auto& [name, opt] : fs.options)
    if (opt->count() > 0) flags[name] = fs.values.at(name);
  return deepwave::scenario_from(deepwave::merge_key_values(std::move(file), flags));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Usage, "cannot write output file: " + path);
  out << content;
}

int fail(const Error& e) {
  std::cerr << "error: " << deepwave::to_string(e.code()) << ": " << e.what() << '\n';
  return deepwave::exit_code_for(e.code());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Particle trajectories beneath small-amplitude deep-water gravity waves"};
  app.require_subcommand(1);

  FlagSet f_disp, f_traj, f_stag, f_val, f_field;
  auto* disp = app.add_subcommand("dispersion", "table of (k, lambda, c, A)");
  auto* traj = app.add_subcommand("trajectory", "closed-form or integrated particle path");
  auto* stag = app.add_subcommand("stagnation", "solutions of |kA e^Z| = |kcZ - beta|");
  auto* val = app.add_subcommand("validate", "residual and oracle checks for a scenario");
  auto* field = app.add_subcommand("field", "evaluate u, v, p, eta at one point");
  add_flags(disp, f_disp);
  add_flags(traj, f_traj);
  add_flags(stag, f_stag);
  add_flags(val, f_val);
  add_flags(field, f_field);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: Usage: " << e.what() << '\n';
    return deepwave::kExitUsage;
  }

  std::cout.imbue(std::locale::classic());
  try {
    if (disp->parsed()) {
      deepwave::run_dispersion(resolve(f_disp), std::cout);
    } else if (traj->parsed()) {
      const auto cfg = resolve(f_traj);
      const auto out = deepwave::run_trajectory(cfg);
      if (cfg.out == "-") {
        std::cout << out.data;
        std::cerr << out.metadata;
      } else {
        write_file(cfg.out, out.data);
        std::cout << out.metadata;
      }
      if (!cfg.svg.empty()) write_file(cfg.svg, out.svg);
    } else if (stag->parsed()) {
      deepwave::run_stagnation(resolve(f_stag), std::cout);
    } else if (val->parsed()) {
      const auto log = deepwave::validate_scenario(resolve(f_val));
      log.print(std::cout);
      std::cout << (log.all_pass() ? "RESULT: all checks passed\n" : "RESULT: some checks failed\n");
      if (!log.all_pass()) return deepwave::kExitValidation;
    } else if (field->parsed()) {
      deepwave::run_field(resolve(f_field), std::cout);
    }
  } catch (const Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  return deepwave::kExitOk;
}
