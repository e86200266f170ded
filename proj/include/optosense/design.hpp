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

#ifndef OPTOSENSE_DESIGN_HPP
#define OPTOSENSE_DESIGN_HPP

#include <optional>
#include <string>
#include <vector>

#include "optosense/dynamics.hpp"
#include "optosense/errors.hpp"
#include "optosense/params.hpp"

namespace optosense {

/// Left-hand side of the impedance-matching condition,
/// C0 + (xi_m - 1)[1 - C1 / (1 - xi_d)]. Zero on a matched point.
double matching_residual(double C0, double C1, double xi_m, double xi_d);

/// True when C0 + C1 <= 1, the cooperativity budget that accompanies
/// impedance matching. Violations are warnings, not errors.
bool within_matching_budget(double C0, double C1);

/// xi_d = 1 - C1 (1 - xi_m) / ((1 - xi_m) - C0). Empty when C1 = 0, where the
/// condition no longer involves xi_d. Throws SingularityError when
/// 1 - xi_m = C0.
std::optional<double> solve_xi_d(double C0, double C1, double xi_m);

/// xi_m = 1 - C0 / [1 - C1 / (1 - xi_d)]. Throws SingularityError when the
/// bracket vanishes or xi_d = 1 with C1 > 0.
double solve_xi_m(double C0, double C1, double xi_d);

struct OperatingPoint {
  double C0 = 0.0;
  double C1 = 0.0;
  double xi_m = 0.0;
  double xi_d = 0.0;
  std::optional<double> matching_residual;  // empty at xi_d = 1 with C1 > 0
  bool stable = false;
  StabilityReport stability;
  // Red-detuned consistency, only when the light-matter chain is known:
  // relative mismatch of omega_d vs omega_m and of Delta0_bar vs omega_d.
  std::optional<double> bogoliubov_mismatch;
  std::optional<double> detuning_mismatch;
  bool red_detuned = false;  // both mismatches within kRedDetunedTolerance
};

inline constexpr double kRedDetunedTolerance = 1e-6;

/// Audit only: nothing is enforced or corrected.
OperatingPoint verify_operating_point(const DerivedParams& derived,
                                      const ModulationSettings& mods);

struct DesignTarget {
  double C0 = 0.0;
  double C1 = 0.0;
  /// Needed only when C1 = 0: the atom-laser detuning cannot be inferred.
  std::optional<double> delta_a;
};

/// Laboratory settings realising a target pair of cooperativities in the
/// red-detuned regime. Angular quantities in rad/s.
struct LabRecipe {
  double target_C0 = 0.0;
  double target_C1 = 0.0;
  double omega_sw = 0.0;
  double delta_a = 0.0;
  double omega_L = 0.0;
  double n_cav = 0.0;
  double E_L = 0.0;  // NaN when n_cav < 0
  // audit trail
  double x_zp = 0.0;
  double g0 = 0.0;
  double U0 = 0.0;
  double G0 = 0.0;
  double omega_d = 0.0;
  double delta_0 = 0.0;
  double scattering_length = 0.0;  // a_s that realises omega_sw
  double achieved_C0 = 0.0;        // 4 g0^2 n_cav / (kappa gamma_m)
  double achieved_C1 = 0.0;
  bool feasible = false;
  std::vector<std::string> warnings;
};

/// The design chain could not produce a physical recipe; `partial()` holds
/// every quantity computed before the failure.
class InfeasibleDesign : public Error {
 public:
  InfeasibleDesign(const std::string& what, LabRecipe partial)
      : Error(what), partial_(std::move(partial)) {}
  const LabRecipe& partial() const noexcept { return partial_; }

 private:
  LabRecipe partial_;
};

/// Red-detuned chain: omega_sw = omega_m - 4 omega_R; Delta_a from the
/// cooperativity ratio; omega_L = omega_a - Delta_a; n_cav from
/// Delta0_bar = omega_m; E_L from n_cav. The drive fields of `hardware`
/// (E_L, omega_L, scattering_length) are ignored.
LabRecipe design_experiment(const DesignTarget& target, const SystemParams& hardware);

/// Hardware plus recipe, ready for derive().
SystemParams apply_recipe(const SystemParams& hardware, const LabRecipe& recipe);

}  // namespace optosense

#endif  // OPTOSENSE_DESIGN_HPP
