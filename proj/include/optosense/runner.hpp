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

#ifndef OPTOSENSE_RUNNER_HPP
#define OPTOSENSE_RUNNER_HPP

#include <exception>
#include <string>
#include <string_view>

#include "optosense/design.hpp"
#include "optosense/scenario.hpp"
#include "optosense/spectra.hpp"

namespace optosense {

const char* version();

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitInfeasible = 3,  // infeasible design or a singular point
  kExitNumeric = 4,
};

int exit_code_for(const std::exception& error);

inline constexpr std::string_view kCsvHeader =
    "omega_over_gamma_m,R_m,n_add,S_out,sensitivity_N_per_sqrtHz,snr";

struct SweepArtifacts {
  std::string csv;   // deterministic for identical configs
  std::string meta;  // INI; carries the timestamp
  SweepResult result;
};

/// Unstable configurations still sweep; the metadata says stable = false.
SweepArtifacts run_sweep(const ScenarioConfig& config, std::string_view timestamp);

/// key=value lines at one offset omega (rad/s). Poles throw SingularityError.
std::string run_point(const ScenarioConfig& config, double omega);

std::string run_stability(const ScenarioConfig& config);

struct DesignArtifacts {
  LabRecipe recipe;
  bool feasible = false;
  std::string reason;  // why the design is infeasible
  std::string text;    // INI recipe; written in both cases
};

/// Infeasible designs are captured rather than thrown; configuration errors
/// still throw.
DesignArtifacts run_design(const ScenarioConfig& config);

std::string list_presets();

/// "<value><unit>" with unit rads, hz or gm (multiples of gamma_m).
double parse_omega(std::string_view text, double gamma_m);

/// Twelve significant digits; "nan" for undefined values.
std::string format_value(double v);

}  // namespace optosense

#endif  // OPTOSENSE_RUNNER_HPP
