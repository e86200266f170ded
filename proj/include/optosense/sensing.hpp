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

#ifndef OPTOSENSE_SENSING_HPP
#define OPTOSENSE_SENSING_HPP

#include <complex>
#include <variant>
#include <vector>

#include "optosense/params.hpp"

namespace optosense {

/// F(t) = amplitude * cos(frequency * t + phase). Represented by its two
/// spectral lines (amplitude/2) e^{-i phase} at +frequency and
/// (amplitude/2) e^{+i phase} at -frequency.
struct ToneForce {
  double amplitude = 0.0;  // N
  double frequency = 0.0;  // rad/s
  double phase = 0.0;      // rad
};

/// Sampled spectral amplitude F(omega) in N/sqrt(Hz) on an ascending grid,
/// linearly interpolated. A real force requires F(-omega) = conj(F(omega)).
struct TabulatedForce {
  std::vector<double> omega;
  std::vector<std::complex<double>> value;
};

using ForceSignal = std::variant<ToneForce, TabulatedForce>;

/// Throws InvalidArgument on a negative tone amplitude, a non-ascending or
/// mismatched table, or a table violating the reality condition.
void validate(const ForceSignal& signal);

/// Lines closer than this fraction of omega_m are treated as coincident.
inline constexpr double kLineTolerance = 1e-9;

/// F~(omega) = [F(omega + omega_m) - F(omega - omega_m)] / 2. Throws
/// InvalidArgument when a table does not cover omega +- omega_m.
std::complex<double> force_transform(const ForceSignal& signal, double omega,
                                     double omega_m);

/// m hbar omega_m gamma_m, the scale converting added quanta to N^2/Hz.
double force_noise_scale(const DerivedParams& derived);

/// S_N = m hbar omega_m gamma_m [(n_m + 1/2) + n_add], two-sided symmetric.
double noise_force_spectrum(const DerivedParams& derived, double n_m, double n_add);

double noise_force_spectrum(const DerivedParams& derived,
                            const ModulationSettings& mods,
                            const ThermalEnvironment& env, double omega);

/// sqrt(S_N), the minimum detectable force in N/sqrt(Hz).
double sensitivity(const DerivedParams& derived, const ModulationSettings& mods,
                   const ThermalEnvironment& env, double omega);

/// |F~(omega)| / sqrt(S_N(omega)).
double snr(const ForceSignal& signal, const DerivedParams& derived,
           const ModulationSettings& mods, const ThermalEnvironment& env,
           double omega);

/// Signal-to-noise ratio required before a detection is trusted.
inline constexpr double kConfidenceLevel = 3.0;

struct SensingPoint {
  double omega = 0.0;
  double S_N = 0.0;
  double sensitivity = 0.0;
  double snr = 0.0;
};

SensingPoint sense(const ForceSignal& signal, const DerivedParams& derived,
                   double n_m, double n_add, double omega);

}  // namespace optosense

#endif  // OPTOSENSE_SENSING_HPP
