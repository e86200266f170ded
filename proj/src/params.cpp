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

#include "optosense/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "optosense/errors.hpp"

namespace optosense {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be finite and > 0, got " +
                          std::to_string(value));
  }
}

void require_non_negative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be finite and >= 0, got " +
                          std::to_string(value));
  }
}

// Intracavity steady state. With y = c * n the effective detuning is
// Delta0 - y and the photon number obeys n (kappa^2/4 + (Delta0 - y)^2) = E^2,
// i.e. q(y) = y (kappa^2/4 + (Delta0 - y)^2) - c E^2 = 0 on y >= 0.
// q(0) < 0 and q grows like y^3, so every root is bracketed by the
// monotone pieces between the critical points of q.
class SteadyStateSolver {
 public:
  SteadyStateSolver(double delta0, double kappa, double c, double pump,
                    const SteadyStateOptions& options)
      : delta0_(delta0),
        quarter_kappa2_(0.25 * kappa * kappa),
        forcing_(c * pump * pump),
        options_(options) {}

  // All nonnegative roots y, ascending.
  std::vector<double> roots() const {
    if (forcing_ == 0.0) return {0.0};
    // q(y) >= y^3 - ... ; beyond y_hi the cubic dominates.
    const double t = std::cbrt(forcing_) + std::sqrt(quarter_kappa2_) * 2.0 + 1.0;
    const double y_hi = std::max(delta0_, 0.0) + t;

    std::vector<double> knots{0.0};
    const double disc = 4.0 * delta0_ * delta0_ - 12.0 * quarter_kappa2_;
    if (disc > 0.0) {
      const double s = std::sqrt(disc);
      // Critical points of q: 3y^2 - 4 Delta0 y + Delta0^2 + kappa^2/4 = 0.
      for (double k : {(4.0 * delta0_ - s) / 6.0, (4.0 * delta0_ + s) / 6.0}) {
        if (k > 0.0 && k < y_hi) knots.push_back(k);
      }
    }
    knots.push_back(y_hi);

    std::vector<double> found;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double a = knots[i];
      const double b = knots[i + 1];
      const double qa = q(a);
      const double qb = q(b);
      if (qa == 0.0) {
        found.push_back(a);
      } else if ((qa < 0.0) != (qb < 0.0)) {
        found.push_back(bisect(a, b, qa));
      }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
  }

 private:
  double q(double y) const {
    const double detuning = delta0_ - y;
    return y * (quarter_kappa2_ + detuning * detuning) - forcing_;
  }

  double bisect(double a, double b, double qa) const {
    for (int it = 0; it < options_.max_iterations; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) return mid;  // machine resolution reached
      // a_bar ~ sqrt(y): relative error on a_bar is half that on y.
      if (b - a <= 2.0 * options_.relative_tolerance * a) return mid;
      const double qm = q(mid);
      if (qm == 0.0) return mid;
      if ((qm < 0.0) == (qa < 0.0)) {
        a = mid;
        qa = qm;
      } else {
        b = mid;
      }
    }
    throw NumericError("intracavity steady state did not converge within " +
                       std::to_string(options_.max_iterations) + " iterations");
  }

  double delta0_;
  double quarter_kappa2_;
  double forcing_;
  SteadyStateOptions options_;
};

}  // namespace

void validate(const SystemParams& p) {
  require_positive(p.kappa, "kappa");
  require_positive(p.omega_m, "omega_m");
  require_positive(p.gamma_m, "gamma_m");
  require_positive(p.mass, "mass");
  require_positive(p.cavity_length, "cavity_length");
  require_positive(p.omega_c, "omega_c");
  if (!(p.n_atoms >= 1.0)) {
    throw InvalidArgument("n_atoms must be >= 1, got " + std::to_string(p.n_atoms));
  }
  require_positive(p.atom_mass, "atom_mass");
  require_positive(p.g_a, "g_a");
  require_positive(p.omega_a, "omega_a");
  require_positive(p.omega_R, "omega_R");
  require_positive(p.gamma_d, "gamma_d");
  require_positive(p.beam_waist, "beam_waist");
  if (!std::isfinite(p.scattering_length)) {
    throw InvalidArgument("scattering_length must be finite");
  }
  require_non_negative(p.E_L, "E_L");
  require_positive(p.omega_L, "omega_L");
}

ModulationSettings ModulationSettings::from_lambda(double lambda_m,
                                                   double lambda_d,
                                                   double gamma_m,
                                                   double gamma_d) {
  require_positive(gamma_m, "gamma_m");
  require_positive(gamma_d, "gamma_d");
  return {2.0 * lambda_m / gamma_m, 2.0 * lambda_d / gamma_d};
}

ThermalEnvironment ThermalEnvironment::from_occupations(double n_c, double n_m,
                                                        double n_d) {
  require_non_negative(n_c, "n_c");
  require_non_negative(n_m, "n_m");
  require_non_negative(n_d, "n_d");
  return {n_c, n_m, n_d, std::nullopt};
}

ThermalEnvironment ThermalEnvironment::from_temperature(double temperature,
                                                        double omega_c,
                                                        double omega_m,
                                                        double omega_d) {
  return {thermal_occupation(omega_c, temperature),
          thermal_occupation(omega_m, temperature),
          thermal_occupation(omega_d, temperature), temperature};
}

double zero_point_fluctuation(double mass, double omega_m) {
  require_positive(mass, "mass");
  require_positive(omega_m, "omega_m");
  return std::sqrt(constants::hbar / (2.0 * mass * omega_m));
}

double cooperativity(double coupling, double kappa, double gamma) {
  return 4.0 * coupling * coupling / (kappa * gamma);
}

double thermal_occupation(double omega, double temperature) {
  require_positive(omega, "omega");
  require_non_negative(temperature, "temperature");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(constants::hbar * omega / (constants::k_B * temperature));
}

DerivedParams derive(const SystemParams& p, const SteadyStateOptions& options) {
  validate(p);

  LightMatterChain chain;
  const double x_zp = zero_point_fluctuation(p.mass, p.omega_m);
  chain.g0 = x_zp * p.omega_c / p.cavity_length;

  chain.delta_a = p.omega_a - p.omega_L;
  if (chain.delta_a == 0.0) {
    throw SingularityError("atom-laser detuning omega_a - omega_L is zero", 0.0);
  }
  chain.U0 = -p.g_a * p.g_a / chain.delta_a;
  chain.G0 = std::sqrt(2.0 * p.n_atoms) * chain.U0 / 4.0;

  chain.omega_sw = 8.0 * constants::pi * constants::hbar * p.n_atoms *
                   p.scattering_length /
                   (p.atom_mass * p.cavity_length * p.beam_waist * p.beam_waist);
  chain.omega_d = 4.0 * p.omega_R + chain.omega_sw;
  if (!(chain.omega_d > 0.0)) {
    throw InvalidArgument("Bogoliubov frequency 4 omega_R + omega_sw must be > 0");
  }

  const double stark_shift = p.n_atoms * chain.U0 / 2.0;
  chain.delta_0 = (p.omega_c - p.omega_L) + stark_shift;

  // Delta0_bar = Delta0 - 2 g0 b_bar + 2 G0 d_bar with b_bar = g0 n / omega_m
  // and d_bar = -G0 n / omega_d.
  const double shift_per_photon = 2.0 * chain.g0 * chain.g0 / p.omega_m +
                                  2.0 * chain.G0 * chain.G0 / chain.omega_d;
  const SteadyStateSolver solver(chain.delta_0, p.kappa, shift_per_photon, p.E_L,
                                 options);
  const std::vector<double> roots = solver.roots();
  if (roots.empty()) {
    throw NumericError("no physical intracavity steady state found");
  }

  double shift = roots.front();
  if (options.branch == SteadyStateBranch::red_sideband) {
    auto distance = [&](double y) { return std::abs(chain.delta_0 - y - p.omega_m); };
    shift = *std::min_element(roots.begin(), roots.end(),
                              [&](double a, double b) { return distance(a) < distance(b); });
  }
  const double n_cav = shift / shift_per_photon;
  chain.delta_0_bar = chain.delta_0 - shift;
  chain.a_bar = std::sqrt(n_cav);
  chain.b_bar = chain.g0 * n_cav / p.omega_m;
  chain.d_bar = -chain.G0 * n_cav / chain.omega_d;

  DerivedParams d;
  d.kappa = p.kappa;
  d.gamma_m = p.gamma_m;
  d.gamma_d = p.gamma_d;
  d.omega_m = p.omega_m;
  d.mass = p.mass;
  d.x_zp = x_zp;
  d.g = chain.g0 * chain.a_bar;
  d.G = chain.G0 * chain.a_bar;
  d.C0 = cooperativity(d.g, p.kappa, p.gamma_m);
  d.C1 = cooperativity(d.G, p.kappa, p.gamma_d);
  d.chain = chain;
  return d;
}

DerivedParams from_cooperativities(const CooperativitySpec& s) {
  require_non_negative(s.C0, "C0");
  require_non_negative(s.C1, "C1");
  require_positive(s.kappa, "kappa");
  require_positive(s.gamma_m, "gamma_m");
  require_positive(s.gamma_d, "gamma_d");

  DerivedParams d;
  d.kappa = s.kappa;
  d.gamma_m = s.gamma_m;
  d.gamma_d = s.gamma_d;
  d.omega_m = s.omega_m;
  d.mass = s.mass;
  d.x_zp = zero_point_fluctuation(s.mass, s.omega_m);
  d.g = std::sqrt(s.C0 * s.kappa * s.gamma_m / 4.0);
  d.G = std::sqrt(s.C1 * s.kappa * s.gamma_d / 4.0);
  d.C0 = s.C0;
  d.C1 = s.C1;
  return d;
}

}  // namespace optosense
