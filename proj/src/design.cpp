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

#include "optosense/design.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace optosense {
namespace {

bool vanishes(double value, double scale) {
  return value == 0.0 || std::abs(value) <= 1e-15 * scale;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(name) + " must be finite and > 0");
  }
}

double relative_mismatch(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

double matching_residual(double C0, double C1, double xi_m, double xi_d) {
  if (C1 != 0.0 && xi_d == 1.0) {
    throw SingularityError("matching residual singular at xi_d = 1", xi_d);
  }
  const double bracket = C1 == 0.0 ? 1.0 : 1.0 - C1 / (1.0 - xi_d);
  return C0 + (xi_m - 1.0) * bracket;
}

bool within_matching_budget(double C0, double C1) { return C0 + C1 <= 1.0; }

std::optional<double> solve_xi_d(double C0, double C1, double xi_m) {
  if (C1 == 0.0) return std::nullopt;
  const double detune_m = 1.0 - xi_m;
  const double den = detune_m - C0;
  if (vanishes(den, std::abs(detune_m) + std::abs(C0))) {
    throw SingularityError("matching has no xi_d solution when 1 - xi_m = C0", xi_m);
  }
  return 1.0 - C1 * detune_m / den;
}

double solve_xi_m(double C0, double C1, double xi_d) {
  if (C1 != 0.0 && xi_d == 1.0) {
    throw SingularityError("matching has no xi_m solution at xi_d = 1", xi_d);
  }
  const double ratio = C1 == 0.0 ? 0.0 : C1 / (1.0 - xi_d);
  const double bracket = 1.0 - ratio;
  if (vanishes(bracket, 1.0 + std::abs(ratio))) {
    throw SingularityError("matching has no xi_m solution when C1 = 1 - xi_d", xi_d);
  }
  return 1.0 - C0 / bracket;
}

OperatingPoint verify_operating_point(const DerivedParams& d,
                                      const ModulationSettings& mods) {
  OperatingPoint op;
  op.C0 = d.C0;
  op.C1 = d.C1;
  op.xi_m = mods.xi_m;
  op.xi_d = mods.xi_d;
  try {
    op.matching_residual = matching_residual(d.C0, d.C1, mods.xi_m, mods.xi_d);
  } catch (const SingularityError&) {
  }
  op.stability = stability_eigen(build_drift_matrix(d, mods));
  op.stable = op.stability.stable;
  if (d.chain) {
    op.bogoliubov_mismatch = relative_mismatch(d.chain->omega_d, d.omega_m);
    op.detuning_mismatch = relative_mismatch(d.chain->delta_0_bar, d.chain->omega_d);
    op.red_detuned = *op.bogoliubov_mismatch <= kRedDetunedTolerance &&
                     *op.detuning_mismatch <= kRedDetunedTolerance;
  }
  return op;
}

LabRecipe design_experiment(const DesignTarget& target, const SystemParams& hw) {
  require_positive(hw.kappa, "kappa");
  require_positive(hw.omega_m, "omega_m");
  require_positive(hw.gamma_m, "gamma_m");
  require_positive(hw.gamma_d, "gamma_d");
  require_positive(hw.mass, "mass");
  require_positive(hw.cavity_length, "cavity_length");
  require_positive(hw.omega_c, "omega_c");
  require_positive(hw.n_atoms, "n_atoms");
  require_positive(hw.atom_mass, "atom_mass");
  require_positive(hw.g_a, "g_a");
  require_positive(hw.omega_a, "omega_a");
  require_positive(hw.omega_R, "omega_R");
  require_positive(hw.beam_waist, "beam_waist");
  if (!(target.C0 >= 0.0) || !(target.C1 >= 0.0)) {
    throw InvalidArgument("target cooperativities must be >= 0");
  }

  LabRecipe r;
  r.target_C0 = target.C0;
  r.target_C1 = target.C1;
  r.E_L = std::numeric_limits<double>::quiet_NaN();
  if (!within_matching_budget(target.C0, target.C1)) {
    r.warnings.push_back("C0 + C1 > 1: outside the impedance-matching budget");
  }

  r.omega_sw = hw.omega_m - 4.0 * hw.omega_R;
  r.omega_d = hw.omega_m;
  if (!(r.omega_sw > 0.0)) {
    throw InfeasibleDesign("omega_m <= 4 omega_R: no positive s-wave frequency "
                           "puts the Bogoliubov mode on the mirror",
                           r);
  }
  r.scattering_length = r.omega_sw * hw.atom_mass * hw.cavity_length *
                        hw.beam_waist * hw.beam_waist /
                        (8.0 * constants::pi * constants::hbar * hw.n_atoms);

  r.x_zp = zero_point_fluctuation(hw.mass, hw.omega_m);
  r.g0 = r.x_zp * hw.omega_c / hw.cavity_length;

  const double ga2 = hw.g_a * hw.g_a;
  if (target.C1 > 0.0) {
    r.delta_a = -(ga2 / r.g0) * std::sqrt(hw.n_atoms * hw.gamma_m * target.C0 /
                                          (8.0 * hw.gamma_d * target.C1));
  } else if (target.delta_a) {
    r.delta_a = *target.delta_a;
  } else {
    throw InvalidArgument(
        "bare system requires explicit atom detuning or no BEC section");
  }
  if (r.delta_a == 0.0) {
    throw InfeasibleDesign("atom-laser detuning is zero", r);
  }
  r.omega_L = hw.omega_a - r.delta_a;
  r.U0 = -ga2 / r.delta_a;
  r.G0 = std::sqrt(2.0 * hw.n_atoms) * r.U0 / 4.0;
  r.delta_0 = hw.omega_c - r.omega_L - hw.n_atoms * ga2 / (2.0 * r.delta_a);

  const double coupling2 = r.g0 * r.g0 + r.G0 * r.G0;
  r.n_cav = (hw.omega_m * r.delta_0 - hw.omega_m * hw.omega_m) / (2.0 * coupling2);
  r.achieved_C0 = 4.0 * r.g0 * r.g0 * r.n_cav / (hw.kappa * hw.gamma_m);
  r.achieved_C1 = 4.0 * r.G0 * r.G0 * r.n_cav / (hw.kappa * hw.gamma_d);
  if (r.n_cav < 0.0) {
    throw InfeasibleDesign(
        fmt::format("negative intracavity photon number: Delta0 = {:.6g} rad/s is "
                    "below omega_m, the red-detuned point is unreachable",
                    r.delta_0),
        r);
  }
  r.E_L = std::sqrt(r.n_cav * (hw.kappa * hw.kappa / 4.0 + hw.omega_m * hw.omega_m));
  r.feasible = true;
  return r;
}

SystemParams apply_recipe(const SystemParams& hw, const LabRecipe& r) {
  SystemParams p = hw;
  p.omega_L = r.omega_L;
  p.E_L = r.E_L;
  p.scattering_length = r.scattering_length;
  return p;
}

}  // namespace optosense
