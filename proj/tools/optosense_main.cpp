// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: sweep, design, point, stability, presets.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "optosense/errors.hpp"
#include "optosense/runner.hpp"
#include "optosense/scenario.hpp"

namespace fs = std::filesystem;
using namespace optosense;

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw NumericError("cannot write '" + path.string() + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and design tool for a modulated BEC-optomechanical force sensor"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  bool solve_matching = false;
  std::string omega_text;

  auto* sweep_cmd = app.add_subcommand("sweep", "frequency sweep to CSV plus .meta sidecar");
  sweep_cmd->add_option("config", config_path, "scenario file")->required();
  sweep_cmd->add_option("-o,--output", output, "CSV path (default: <config>.csv)");
  sweep_cmd->add_flag("--solve-matching", solve_matching,
                      "replace xi_d by the exact impedance-matching solution");

  auto* design_cmd = app.add_subcommand("design", "laboratory recipe for target cooperativities");
  design_cmd->add_option("config", config_path, "scenario file")->required();
  design_cmd->add_option("-o,--output", output, "recipe path (default: stdout)");

  auto* point_cmd = app.add_subcommand("point", "single-frequency report");
  point_cmd->add_option("config", config_path, "scenario file")->required();
  point_cmd->add_option("--omega", omega_text, "offset frequency, e.g. 0gm, 10hz, 1e3rads")
      ->required();

  auto* stability_cmd = app.add_subcommand("stability", "stability report");
  stability_cmd->add_option("config", config_path, "scenario file")->required();

  auto* presets_cmd = app.add_subcommand("presets", "built-in scenarios");
  presets_cmd->add_subcommand("list", "list preset names")->required();
  presets_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (presets_cmd->parsed()) {
      std::cout << list_presets();
      return kExitOk;
    }
    ScenarioConfig config = load_scenario_file(config_path);

    if (sweep_cmd->parsed()) {
      if (solve_matching) {
        if (!config.modulation) throw ConfigError("missing [modulation] section");
        config.modulation->mode = ModulationMode::solve_matching;
      }
      const SweepArtifacts art = run_sweep(config, utc_timestamp());
      fs::path csv = output.empty() ? fs::path(config_path).replace_extension(".csv")
                                    : fs::path(output);
      fs::path meta = csv;
      meta.replace_extension(".meta");
      write_file(csv, art.csv);
      write_file(meta, art.meta);
      if (!art.result.stability.stable) {
        std::cerr << "warning: configuration is unstable (max Re eigenvalue = "
                  << art.result.stability.max_real_eigenvalue << " rad/s)\n";
      }
      std::cerr << "wrote " << csv.string() << " and " << meta.string() << '\n';
      return kExitOk;
    }
    if (design_cmd->parsed()) {
      const DesignArtifacts art = run_design(config);
      if (output.empty()) {
        std::cout << art.text;
      } else {
        write_file(output, art.text);
      }
      if (!art.feasible) {
        std::cerr << "error: infeasible design: " << art.reason << '\n';
        return kExitInfeasible;
      }
      for (const auto& w : art.recipe.warnings) std::cerr << "warning: " << w << '\n';
      return kExitOk;
    }
    if (point_cmd->parsed()) {
      const double gamma_m = resolve_derived(config).gamma_m;
      std::cout << run_point(config, parse_omega(omega_text, gamma_m));
      return kExitOk;
    }
    if (stability_cmd->parsed()) {
      std::cout << run_stability(config);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}
