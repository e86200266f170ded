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

#include "optosense/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optosense/errors.hpp"
#include "optosense/response.hpp"
#include "optosense/spectra.hpp"

namespace optosense {
namespace {

std::complex<double> tone_line(const ToneForce& tone, double omega, double tol) {
  std::complex<double> out = 0.0;
  const double half = 0.5 * tone.amplitude;
  if (std::abs(omega - tone.frequency) <= tol) {
    out += std::polar(half, -tone.phase);
  }
  if (std::abs(omega + tone.frequency) <= tol) {
    out += std::polar(half, tone.phase);
  }
  return out;
}

std::complex<double> table_value(const TabulatedForce& t, double omega) {
  if (t.omega.empty() || omega < t.omega.front() || omega > t.omega.back()) {
    throw InvalidArgument("tabulated force does not cover omega = " +
                          std::to_string(omega));
  }
  auto hi = std::lower_bound(t.omega.begin(), t.omega.end(), omega);
  const auto i = static_cast<std::size_t>(hi - t.omega.begin());
  if (t.omega[i] == omega) return t.value[i];
  const double w = (omega - t.omega[i - 1]) / (t.omega[i] - t.omega[i - 1]);
  return (1.0 - w) * t.value[i - 1] + w * t.value[i];
}

struct Evaluate {
  double omega;
  double tol;
  std::complex<double> operator()(const ToneForce& tone) const {
    return tone_line(tone, omega, tol);
  }
  std::complex<double> operator()(const TabulatedForce& t) const {
    return table_value(t, omega);
  }
};

}  // namespace

void validate(const ForceSignal& signal) {
  if (const auto* tone = std::get_if<ToneForce>(&signal)) {
    if (!(tone->amplitude >= 0.0)) {
      throw InvalidArgument("tone amplitude must be >= 0");
    }
    return;
  }
  const auto& t = std::get<TabulatedForce>(signal);
  if (t.omega.size() != t.value.size() || t.omega.size() < 2) {
    throw InvalidArgument("tabulated force needs >= 2 matching samples");
  }
  if (!std::is_sorted(t.omega.begin(), t.omega.end()) ||
      std::adjacent_find(t.omega.begin(), t.omega.end()) != t.omega.end()) {
    throw InvalidArgument("tabulated force frequencies must be strictly ascending");
  }
  double scale = 0.0;
  for (const auto& v : t.value) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < t.omega.size(); ++i) {
    const double mirror = -t.omega[i];
    if (mirror < t.omega.front() || mirror > t.omega.back()) continue;
    const auto reflected = table_value(t, mirror);
    if (std::abs(reflected - std::conj(t.value[i])) > 1e-9 * scale) {
      throw InvalidArgument("tabulated force violates F(-w) = conj(F(w)) at w = " +
                            std::to_string(t.omega[i]));
    }
  }
}

std::complex<double> force_transform(const ForceSignal& signal, double omega,
                                     double omega_m) {
  const double tol = kLineTolerance * std::abs(omega_m);
  const auto plus = std::visit(Evaluate{omega + omega_m, tol}, signal);
  const auto minus = std::visit(Evaluate{omega - omega_m, tol}, signal);
  return 0.5 * (plus - minus);
}

double force_noise_scale(const DerivedParams& d) {
  return d.mass * constants::hbar * d.omega_m * d.gamma_m;
}

double noise_force_spectrum(const DerivedParams& d, double n_m, double n_add) {
  return force_noise_scale(d) * ((n_m + 0.5) + n_add);
}

double noise_force_spectrum(const DerivedParams& d, const ModulationSettings& mods,
                            const ThermalEnvironment& env, double omega) {
  const TransferFunctions tf = transfer_functions(d, mods, omega);
  return noise_force_spectrum(d, env.n_m, added_noise(tf, env));
}

double sensitivity(const DerivedParams& d, const ModulationSettings& mods,
                   const ThermalEnvironment& env, double omega) {
  return std::sqrt(noise_force_spectrum(d, mods, env, omega));
}

double snr(const ForceSignal& signal, const DerivedParams& d,
           const ModulationSettings& mods, const ThermalEnvironment& env,
           double omega) {
  return std::abs(force_transform(signal, omega, d.omega_m)) /
         sensitivity(d, mods, env, omega);
}

SensingPoint sense(const ForceSignal& signal, const DerivedParams& d, double n_m,
                   double n_add, double omega) {
  SensingPoint p;
  p.omega = omega;
  p.S_N = noise_force_spectrum(d, n_m, n_add);
  p.sensitivity = std::sqrt(p.S_N);
  p.snr = std::abs(force_transform(signal, omega, d.omega_m)) / p.sensitivity;
  return p;
}

}  // namespace optosense
