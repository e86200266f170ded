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

#ifndef OPTOSENSE_PARAMS_HPP
#define OPTOSENSE_PARAMS_HPP

#include <numbers>
#include <optional>

namespace optosense {

namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_B = 1.380649e-23;      // J / K
}  // namespace constants

// All frequencies and rates below are angular (rad/s). Conversion from
// cycles/s happens once, when a configuration is loaded.

/// Raw laboratory description of the cavity, mirror, condensate and drive.
struct SystemParams {
  double kappa = 0.0;          // cavity damping rate
  double omega_m = 0.0;        // mechanical frequency
  double gamma_m = 0.0;        // mechanical damping rate
  double mass = 0.0;           // mirror mass, kg
  double cavity_length = 0.0;  // m
  double omega_c = 0.0;        // bare cavity frequency
  double n_atoms = 0.0;        // N
  double atom_mass = 0.0;      // kg
  double g_a = 0.0;            // atom-field coupling
  double omega_a = 0.0;        // atomic transition frequency
  double omega_R = 0.0;        // recoil frequency
  double gamma_d = 0.0;        // Bogoliubov damping rate
  double beam_waist = 0.0;     // m
  double scattering_length = 0.0;  // s-wave scattering length a_s, m
  double E_L = 0.0;            // pump rate
  double omega_L = 0.0;        // drive laser frequency
};

/// Throws InvalidArgument when a rate, frequency, mass or length is not
/// strictly positive, N < 1, or E_L is negative.
void validate(const SystemParams& params);

/// Parametric modulation depths in units of half the damping rate,
/// xi = 2 lambda / gamma. The modulation phases are fixed so that lambda is
/// real; only the dimensionless depths are stored.
struct ModulationSettings {
  double xi_m = 0.0;
  double xi_d = 0.0;

  static ModulationSettings from_lambda(double lambda_m, double lambda_d,
                                        double gamma_m, double gamma_d);

  double lambda_m(double gamma_m) const noexcept { return 0.5 * xi_m * gamma_m; }
  double lambda_d(double gamma_d) const noexcept { return 0.5 * xi_d * gamma_d; }
};

/// Mean thermal occupations of the optical, mechanical and Bogoliubov baths.
struct ThermalEnvironment {
  double n_c = 0.0;
  double n_m = 0.0;
  double n_d = 0.0;
  std::optional<double> temperature;  // K, set when computed from T

  static ThermalEnvironment from_occupations(double n_c, double n_m, double n_d);
  static ThermalEnvironment from_temperature(double temperature, double omega_c,
                                             double omega_m, double omega_d);
};

/// Intermediate quantities of the light-matter chain, present only when the
/// derived parameters were computed from a full SystemParams.
struct LightMatterChain {
  double g0 = 0.0;           // single-photon optomechanical coupling
  double U0 = 0.0;           // lattice depth per photon
  double G0 = 0.0;           // single-photon opto-atomic coupling
  double delta_a = 0.0;      // omega_a - omega_L
  double omega_sw = 0.0;     // s-wave scattering frequency
  double omega_d = 0.0;      // Bogoliubov frequency 4 omega_R + omega_sw
  double delta_0 = 0.0;      // Stark-shifted detuning
  double delta_0_bar = 0.0;  // effective detuning including mean-field shifts
  double a_bar = 0.0;        // steady optical amplitude, a_bar^2 = n_cav
  double b_bar = 0.0;
  double d_bar = 0.0;
};

/// Everything the linear-response modules consume.
struct DerivedParams {
  double kappa = 0.0;
  double gamma_m = 0.0;
  double gamma_d = 0.0;
  double omega_m = 0.0;
  double mass = 0.0;
  double x_zp = 0.0;
  double g = 0.0;  // enhanced optomechanical coupling g0 * a_bar
  double G = 0.0;  // enhanced opto-atomic coupling G0 * a_bar
  double C0 = 0.0;
  double C1 = 0.0;
  std::optional<LightMatterChain> chain;
};

/// Which solution of the (possibly bistable) intracavity steady state to use.
enum class SteadyStateBranch {
  red_sideband,   // effective detuning closest to omega_m
  lowest_power,   // smallest intracavity photon number
};

struct SteadyStateOptions {
  SteadyStateBranch branch = SteadyStateBranch::red_sideband;
  double relative_tolerance = 1e-12;  // on a_bar
  int max_iterations = 1000;
};

/// Full chain x_zp -> g0 -> Delta_a -> U0 -> G0 -> Delta0 -> a_bar -> g, G -> C0, C1.
/// The mean-field shift of the detuning is solved self-consistently.
/// Throws SingularityError when omega_a == omega_L and NumericError when the
/// steady state fails to converge.
DerivedParams derive(const SystemParams& params,
                     const SteadyStateOptions& options = {});

/// Scenario specified directly by its cooperativities; g and G are backed out
/// as sqrt(C kappa gamma / 4).
struct CooperativitySpec {
  double C0 = 0.0;
  double C1 = 0.0;
  double kappa = 0.0;
  double gamma_m = 0.0;
  double gamma_d = 0.0;
  double omega_m = 0.0;
  double mass = 0.0;
};

DerivedParams from_cooperativities(const CooperativitySpec& spec);

double zero_point_fluctuation(double mass, double omega_m);

/// 4 coupling^2 / (kappa gamma).
double cooperativity(double coupling, double kappa, double gamma);

/// Bose-Einstein occupation 1 / (exp(hbar omega / k_B T) - 1); zero at T = 0.
double thermal_occupation(double omega, double temperature);

}  // namespace optosense

#endif  // OPTOSENSE_PARAMS_HPP
