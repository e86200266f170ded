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

#include "optosense/spectra.hpp"

#include <cmath>
#include <cstdlib>

namespace optosense {
namespace {

double weighted(double occupation) { return occupation + 0.5; }

// Signed distance into the set; positive inside.
std::optional<double> depth(const std::optional<double>& y, double threshold,
                            bool above) {
  if (!y) return std::nullopt;
  return above ? *y - threshold : threshold - *y;
}

// Length of [x0, x1] lying inside the set, by linear interpolation of depth.
double inside_length(double x0, double x1, const std::optional<double>& f0,
                     const std::optional<double>& f1) {
  if (!f0 || !f1) return 0.0;
  const double dx = x1 - x0;
  if (*f0 > 0.0 && *f1 > 0.0) return dx;
  if (*f0 <= 0.0 && *f1 <= 0.0) return 0.0;
  const double t = *f0 / (*f0 - *f1);
  return *f0 > 0.0 ? t * dx : (1.0 - t) * dx;
}

}  // namespace

double output_spectrum(const TransferFunctions& tf, const ThermalEnvironment& env) {
  return weighted(env.n_c) * std::norm(tf.A_coef) +
         weighted(env.n_m) * std::norm(tf.B_coef) +
         weighted(env.n_d) * std::norm(tf.D_coef);
}

double mechanical_response(const TransferFunctions& tf) { return std::norm(tf.B_coef); }

double added_noise(const TransferFunctions& tf, const ThermalEnvironment& env) {
  const double r = std::norm(tf.B_coef);
  if (r == 0.0) throw UndefinedAddedNoise(tf.omega);
  return (weighted(env.n_c) * std::norm(tf.A_coef) +
          weighted(env.n_d) * std::norm(tf.D_coef)) /
         r;
}

double gain_amplitude(double C0, double C1, double xi_m, double xi_d) {
  const double detune_m = 1.0 - xi_m;
  double atomic = 0.0;
  if (C1 != 0.0) {
    if (xi_d == 1.0) {
      throw SingularityError("gain amplitude singular at xi_d = 1", xi_d);
    }
    atomic = C1 * detune_m / (1.0 - xi_d);
  }
  const double num = C0 - detune_m + atomic;
  const double den = C0 + detune_m + atomic;
  const double scale = std::abs(C0) + std::abs(detune_m) + std::abs(atomic);
  if (std::abs(den) <= 1e-15 * scale || den == 0.0) {
    throw SingularityError("gain amplitude denominator vanishes", xi_m);
  }
  return num / den;
}

OnResonance on_resonance_formulas(double C0, double C1, double xi_m, double xi_d,
                                  const ThermalEnvironment& env) {
  if (xi_m == 1.0) {
    throw SingularityError("on-resonance response singular at xi_m = 1", xi_m);
  }
  if (!(C0 > 0.0)) {
    throw InvalidArgument("on-resonance added noise needs C0 > 0");
  }
  OnResonance out;
  out.gain_amplitude = gain_amplitude(C0, C1, xi_m, xi_d);
  const double detune_m = 1.0 - xi_m;
  const double s = out.gain_amplitude;
  out.R_m0 = C0 * (s - 1.0) * (s - 1.0) / (detune_m * detune_m);

  const double optical = s * s / ((s - 1.0) * (s - 1.0)) * weighted(env.n_c);
  double atomic = 0.0;
  if (C1 != 0.0) {
    const double detune_d = 1.0 - xi_d;
    atomic = C1 / (detune_d * detune_d) * weighted(env.n_d);
  }
  out.n_add0 = detune_m * detune_m / C0 * (optical + atomic);
  return out;
}

OffModulation off_modulation_formulas(double C0, double C1,
                                      const ThermalEnvironment& env) {
  if (!(C0 > 0.0)) {
    throw InvalidArgument("off-modulation formulas need C0 > 0");
  }
  const double mismatch = C0 + C1 - 1.0;
  const double total = 1.0 + C0 + C1;
  return {(mismatch * mismatch / 4.0 * weighted(env.n_c) + C1 * weighted(env.n_d)) / C0,
          4.0 * C0 / (total * total)};
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(hi > lo)) {
    throw InvalidArgument("grid needs at least two points and hi > lo");
  }
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + step * static_cast<double>(i);
  }
  // Symmetric grids hit zero exactly at the centre.
  if (points % 2 == 1 && lo == -hi) grid[points / 2] = 0.0;
  return grid;
}

std::vector<double> default_grid(double gamma_m) {
  return uniform_grid(-kDefaultGridHalfWidth * gamma_m,
                      kDefaultGridHalfWidth * gamma_m, kDefaultGridPoints);
}

double threshold_measure(std::span<const double> x,
                         std::span<const std::optional<double>> y,
                         double threshold, bool above) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    total += inside_length(x[i], x[i + 1], depth(y[i], threshold, above),
                           depth(y[i + 1], threshold, above));
  }
  return total;
}

double threshold_window(std::span<const double> x,
                        std::span<const std::optional<double>> y,
                        double threshold, bool above, double center) {
  if (x.empty()) return 0.0;
  std::size_t k = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs(x[i] - center) < std::abs(x[k] - center)) k = i;
  }
  const auto f = [&](std::size_t i) { return depth(y[i], threshold, above); };
  const auto fk = f(k);
  if (!fk || *fk <= 0.0) return 0.0;

  double width = 0.0;
  for (std::size_t i = k; i + 1 < x.size(); ++i) {
    const auto f1 = f(i + 1);
    width += inside_length(x[i], x[i + 1], f(i), f1);
    if (!f1 || *f1 <= 0.0) break;
  }
  for (std::size_t i = k; i > 0; --i) {
    const auto f0 = f(i - 1);
    width += inside_length(x[i - 1], x[i], f0, f(i));
    if (!f0 || *f0 <= 0.0) break;
  }
  return width;
}

SweepResult sweep(const DerivedParams& derived, const ModulationSettings& mods,
                  const ThermalEnvironment& env, std::span<const double> grid) {
  SweepResult result;
  result.stability = stability_eigen(build_drift_matrix(derived, mods));
  result.points.reserve(grid.size());

  for (double omega : grid) {
    SpectrumPoint p;
    p.omega = omega;
    try {
      const TransferFunctions tf = transfer_functions(derived, mods, omega);
      p.S_out = output_spectrum(tf, env);
      p.R_m = mechanical_response(tf);
      if (p.R_m > 0.0) p.n_add = added_noise(tf, env);
      if (omega == 0.0) {
        try {
          p.gain_amplitude = gain_amplitude(derived.C0, derived.C1, mods.xi_m, mods.xi_d);
        } catch (const SingularityError&) {
        }
      }
    } catch (const SingularityError& e) {
      p.S_out = std::nan("");
      p.R_m = std::nan("");
      p.error = e.what();
    }
    result.points.push_back(std::move(p));
  }

  std::vector<double> x(grid.begin(), grid.end());
  std::vector<std::optional<double>> r, n;
  r.reserve(grid.size());
  n.reserve(grid.size());
  for (const auto& p : result.points) {
    r.push_back(p.error ? std::nullopt : std::optional<double>(p.R_m));
    n.push_back(p.n_add);
  }
  result.amplification_bandwidth = threshold_measure(x, r, 1.0, /*above=*/true);
  result.sub_sql_bandwidth = threshold_measure(x, n, kAddedNoiseSQL, /*above=*/false);
  return result;
}

}  // namespace optosense
