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

#ifndef OPTOSENSE_SCENARIO_HPP
#define OPTOSENSE_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "optosense/design.hpp"
#include "optosense/ini.hpp"
#include "optosense/params.hpp"
#include "optosense/sensing.hpp"
#include "optosense/spectra.hpp"

namespace optosense {

// Frequencies and rates are rad/s once parsed. In files, every frequency key
// carries `_hz` (multiplied by 2 pi on load) or `_rads` (verbatim); a bare
// frequency key is an error. Dumps always use `_rads`.

/// [system] given directly in cooperativities. omega_c is needed only for
/// a temperature-specified thermal bath.
struct CooperativitySystem {
  double C0 = 0.0;
  double C1 = 0.0;
  double kappa_over_gamma_m = 0.0;
  double gamma_m_over_gamma_d = 0.0;  // kept as ratios so dumps round-trip
  double gamma_m = 0.0;
  double omega_m = 0.0;
  double mass = 0.0;
  std::optional<double> omega_c;

  CooperativitySpec spec() const;
};

/// [system] given as laboratory hardware plus drive.
struct LabSystem {
  SystemParams params;
  bool has_drive = false;  // E_L and omega_L present
};

using SystemSection = std::variant<CooperativitySystem, LabSystem>;

enum class ModulationMode { as_given, solve_matching };

struct ModulationSection {
  bool from_lambda = false;
  double first = 0.0;   // xi_m, or lambda_m in rad/s
  double second = 0.0;  // xi_d, or lambda_d in rad/s
  ModulationMode mode = ModulationMode::as_given;
};

struct ThermalSection {
  std::optional<double> temperature;  // K; otherwise the occupations below
  double n_c = 0.0;
  double n_m = 0.0;
  double n_d = 0.0;
};

struct SweepSection {
  double omega_min = -kDefaultGridHalfWidth;  // units of gamma_m
  double omega_max = kDefaultGridHalfWidth;
  std::size_t points = kDefaultGridPoints;
};

struct SignalSection {
  std::variant<ToneForce, std::string> source;  // tone, or path of a table file
};

struct DesignSection {
  DesignTarget target;
};

struct ScenarioConfig {
  std::string preset = "custom";
  std::optional<SystemSection> system;
  std::optional<ModulationSection> modulation;
  ThermalSection thermal;
  SweepSection sweep;
  std::optional<SignalSection> signal;
  std::optional<DesignSection> design;
  std::filesystem::path base_dir;  // for relative table paths; not dumped
};

/// Overlays the named preset under the document: any section present in
/// `doc` replaces the preset's section of the same name. Unknown presets
/// throw ConfigError. Documents with `preset = custom` or no [scenario]
/// are returned unchanged.
IniDocument expand_presets(const IniDocument& doc);

/// Typed view of an already-expanded document. Throws ConfigError.
ScenarioConfig parse_scenario(const IniDocument& doc);

/// expand_presets then parse_scenario.
ScenarioConfig load_scenario(const IniDocument& doc);
ScenarioConfig load_scenario_file(const std::filesystem::path& path);

/// Fully explicit INI form of a config; parse_scenario(to_ini(c)) == c.
IniDocument to_ini(const ScenarioConfig& config);
std::string dump(const ScenarioConfig& config);

// Resolution into the physics layer.

DerivedParams resolve_derived(const ScenarioConfig& config);

struct ResolvedModulation {
  ModulationSettings settings;
  std::optional<double> quoted_xi_d;  // set when solve-matching replaced it
};
ResolvedModulation resolve_modulation(const ScenarioConfig& config,
                                      const DerivedParams& derived);

ThermalEnvironment resolve_thermal(const ScenarioConfig& config,
                                   const DerivedParams& derived);

std::optional<ForceSignal> resolve_signal(const ScenarioConfig& config);

/// Reads `omega_rads, re, im` rows (comma separated, `#` comments) as a
/// tabulated force in N/sqrt(Hz).
TabulatedForce read_force_table(const std::filesystem::path& path);

}  // namespace optosense

#endif  // OPTOSENSE_SCENARIO_HPP
