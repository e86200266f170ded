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

#ifndef OPTOSENSE_SPECTRA_HPP
#define OPTOSENSE_SPECTRA_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "optosense/dynamics.hpp"
#include "optosense/errors.hpp"
#include "optosense/params.hpp"
#include "optosense/response.hpp"

namespace optosense {

/// Added noise at the standard quantum limit of force sensing.
inline constexpr double kAddedNoiseSQL = 0.5;

/// Thrown when the mechanical transduction B(omega) vanishes, leaving the
/// added noise undefined.
class UndefinedAddedNoise : public Error {
 public:
  explicit UndefinedAddedNoise(double omega)
      : Error("added noise undefined: mechanical transduction vanishes at omega = " +
              std::to_string(omega)),
        omega_(omega) {}
  double omega() const noexcept { return omega_; }

 private:
  double omega_;
};

/// Symmetrized output phase-quadrature spectrum
/// (n_c + 1/2)|A|^2 + (n_m + 1/2)|B|^2 + (n_d + 1/2)|D|^2.
double output_spectrum(const TransferFunctions& tf, const ThermalEnvironment& env);

/// R_m = |B|^2.
double mechanical_response(const TransferFunctions& tf);

/// n_add = [(n_c + 1/2)|A|^2 + (n_d + 1/2)|D|^2] / |B|^2.
double added_noise(const TransferFunctions& tf, const ThermalEnvironment& env);

struct OnResonance {
  double n_add0 = 0.0;
  double R_m0 = 0.0;
  double gain_amplitude = 0.0;  // signed sqrt(G_a)
  double optical_gain() const { return gain_amplitude * gain_amplitude; }
};

/// Signed on-resonance optical gain amplitude sqrt(G_a).
double gain_amplitude(double C0, double C1, double xi_m, double xi_d);

/// Closed-form omega = 0 added noise, mechanical response and gain amplitude.
/// Throws SingularityError for xi_m = 1, for xi_d = 1 with C1 > 0, or when
/// the gain denominator vanishes.
OnResonance on_resonance_formulas(double C0, double C1, double xi_m, double xi_d,
                                  const ThermalEnvironment& env);

struct OffModulation {
  double n_add0 = 0.0;
  double R_m0 = 0.0;
};

/// omega = 0 values with both modulations switched off. Requires C0 > 0.
OffModulation off_modulation_formulas(double C0, double C1,
                                      const ThermalEnvironment& env);

struct SpectrumPoint {
  double omega = 0.0;
  double S_out = 0.0;
  double R_m = 0.0;
  std::optional<double> n_add;           // empty where B(omega) = 0
  std::optional<double> gain_amplitude;  // only at omega = 0
  std::optional<std::string> error;      // singularity at this point
};

struct SweepResult {
  std::vector<SpectrumPoint> points;
  double amplification_bandwidth = 0.0;  // measure of {R_m > 1}
  double sub_sql_bandwidth = 0.0;        // measure of {n_add < 1/2}
  StabilityReport stability;
};

/// Evaluates every grid frequency; singular points are annotated and the
/// sweep continues.
SweepResult sweep(const DerivedParams& derived, const ModulationSettings& mods,
                  const ThermalEnvironment& env, std::span<const double> grid);

/// Uniform grid of `points` samples over [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

inline constexpr std::size_t kDefaultGridPoints = 4001;
inline constexpr double kDefaultGridHalfWidth = 2.0;  // in units of gamma_m

/// 4001 points over [-2 gamma_m, 2 gamma_m].
std::vector<double> default_grid(double gamma_m);

/// Total measure of {x : above ? y > threshold : y < threshold}, with the
/// crossings located by linear interpolation. Samples whose value is absent
/// count as outside the set.
double threshold_measure(std::span<const double> x,
                         std::span<const std::optional<double>> y,
                         double threshold, bool above);

/// Width of the contiguous run of the set containing the sample nearest to
/// `center`; zero when that sample is outside the set.
double threshold_window(std::span<const double> x,
                        std::span<const std::optional<double>> y,
                        double threshold, bool above, double center);

}  // namespace optosense

#endif  // OPTOSENSE_SPECTRA_HPP
