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

#ifndef OPTOSENSE_DYNAMICS_HPP
#define OPTOSENSE_DYNAMICS_HPP

#include <array>
#include <complex>
#include <optional>

#include <Eigen/Core>

#include "optosense/params.hpp"

namespace optosense {

/// Index of each fluctuation quadrature in the state vector.
enum Quadrature : int { kXa = 0, kPa = 1, kXb = 2, kPb = 3, kXd = 4, kPd = 5 };

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix3d = Eigen::Matrix<double, 3, 3>;

/// Drift matrix of the linearized quadrature Langevin equations,
/// d(delta u)/dt = A delta u + u_in, in the order (Xa, Pa, Xb, Pb, Xd, Pd).
struct DriftMatrix {
  Matrix6d a = Matrix6d::Zero();

  double kappa() const { return -2.0 * a(kXa, kXa); }
  double gamma_m() const { return -(a(kXb, kXb) + a(kPb, kPb)); }
  double gamma_d() const { return -(a(kXd, kXd) + a(kPd, kPd)); }
  double lambda_m() const { return 0.5 * (a(kXb, kXb) - a(kPb, kPb)); }
  double lambda_d() const { return 0.5 * (a(kXd, kXd) - a(kPd, kPd)); }
  double g() const { return a(kPa, kXb); }
  double G() const { return -a(kPa, kXd); }

  /// (Pa, Xb, Xd) block; carries the transduction to the output phase quadrature.
  Matrix3d phase_block() const;
  /// (Xa, Pb, Pd) block.
  Matrix3d amplitude_block() const;
};

DriftMatrix build_drift_matrix(const DerivedParams& derived,
                               const ModulationSettings& mods);

struct CollectiveCooperativity {
  double mechanical = 0.0;   // C_m
  double bogoliubov = 0.0;   // C_d
};

/// C_m = C0 (1 + C1 - xi_d^2) / [(1 + C1 - xi_d^2)^2 - xi_d^2 C1^2] and the
/// mirror-image expression for C_d. Throws SingularityError carrying the
/// offending xi when a denominator vanishes.
CollectiveCooperativity collective_cooperativity(double C0, double C1,
                                                 double xi_m, double xi_d);

/// Largest modulation rate allowed by the closed-form stability bound,
/// (gamma / 2)(1 + C).
double modulation_bound(double gamma, double collective_C);

/// Exact zero-frequency instability threshold of the (Pa, Xb, Xd) block:
/// the xi_m at which det vanishes for the given xi_d. Returns nullopt when the
/// determinant cannot vanish for any xi_m.
std::optional<double> static_threshold_xi_m(double C0, double C1, double xi_d);

/// Relative width of the marginal band reported as stable-with-warning.
inline constexpr double kMarginalEpsilon = 1e-9;

struct StabilityReport {
  bool stable = false;
  bool marginal = false;  // stable but within kMarginalEpsilon * gamma_m of zero
  double max_real_eigenvalue = 0.0;
  std::array<std::complex<double>, 6> eigenvalues{};
  // Closed-form bound; empty when the collective cooperativity is singular.
  std::optional<double> lambda_m_max;
  std::optional<double> lambda_d_max;
  std::optional<double> collective_C_m;
  std::optional<double> collective_C_d;
  double lambda_m = 0.0;
  double lambda_d = 0.0;
};

/// Eigenvalues of the full drift matrix decide stability; the closed-form
/// bound is reported alongside for comparison. Throws NumericError when the
/// eigen-solver fails.
StabilityReport stability_eigen(const DriftMatrix& drift);

/// Eigenvalues of the two decoupled 3x3 blocks, concatenated.
std::array<std::complex<double>, 6> block_eigenvalues(const DriftMatrix& drift);

}  // namespace optosense

#endif  // OPTOSENSE_DYNAMICS_HPP
