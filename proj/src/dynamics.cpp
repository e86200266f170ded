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

#include "optosense/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "optosense/errors.hpp"

namespace optosense {
namespace {

Matrix3d sub_block(const Matrix6d& a, const std::array<int, 3>& idx) {
  Matrix3d out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out(r, c) = a(idx[r], idx[c]);
  }
  return out;
}

template <typename Matrix>
auto eigenvalues_of(const Matrix& m) {
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenvalue decomposition of the drift matrix failed");
  }
  return solver.eigenvalues();
}

double one_sided(double C_own, double C_other, double xi_other) {
  const double s = 1.0 + C_other - xi_other * xi_other;
  const double den = s * s - xi_other * xi_other * C_other * C_other;
  const double scale = s * s + xi_other * xi_other * C_other * C_other;
  if (std::abs(den) <= 1e-14 * scale || scale == 0.0) {
    throw SingularityError("collective cooperativity is singular", xi_other);
  }
  return C_own * s / den;
}

}  // namespace

Matrix3d DriftMatrix::phase_block() const { return sub_block(a, {kPa, kXb, kXd}); }

Matrix3d DriftMatrix::amplitude_block() const { return sub_block(a, {kXa, kPb, kPd}); }

DriftMatrix build_drift_matrix(const DerivedParams& d, const ModulationSettings& mods) {
  const double lm = mods.lambda_m(d.gamma_m);
  const double ld = mods.lambda_d(d.gamma_d);
  DriftMatrix m;
  Matrix6d& a = m.a;
  a(kXa, kXa) = -d.kappa / 2.0;
  a(kXa, kPb) = -d.g;
  a(kXa, kPd) = d.G;
  a(kPa, kPa) = -d.kappa / 2.0;
  a(kPa, kXb) = d.g;
  a(kPa, kXd) = -d.G;
  a(kXb, kPa) = -d.g;
  a(kXb, kXb) = lm - d.gamma_m / 2.0;
  a(kPb, kXa) = d.g;
  a(kPb, kPb) = -(lm + d.gamma_m / 2.0);
  a(kXd, kPa) = d.G;
  a(kXd, kXd) = ld - d.gamma_d / 2.0;
  a(kPd, kXa) = -d.G;
  a(kPd, kPd) = -(ld + d.gamma_d / 2.0);
  return m;
}

CollectiveCooperativity collective_cooperativity(double C0, double C1,
                                                 double xi_m, double xi_d) {
  return {one_sided(C0, C1, xi_d), one_sided(C1, C0, xi_m)};
}

double modulation_bound(double gamma, double collective_C) {
  return 0.5 * gamma * (1.0 + collective_C);
}

std::optional<double> static_threshold_xi_m(double C0, double C1, double xi_d) {
  // det = 0  <=>  (1 - xi_m)(1 - xi_d + C1) + C0 (1 - xi_d) = 0
  const double den = 1.0 - xi_d + C1;
  if (den == 0.0) return std::nullopt;
  return 1.0 + C0 * (1.0 - xi_d) / den;
}

std::array<std::complex<double>, 6> block_eigenvalues(const DriftMatrix& drift) {
  const auto p = eigenvalues_of(drift.phase_block());
  const auto q = eigenvalues_of(drift.amplitude_block());
  return {p(0), p(1), p(2), q(0), q(1), q(2)};
}

StabilityReport stability_eigen(const DriftMatrix& drift) {
  if (!drift.a.allFinite()) {
    throw InvalidArgument("drift matrix has non-finite entries");
  }
  StabilityReport r;
  const auto ev = eigenvalues_of(drift.a);
  r.max_real_eigenvalue = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 6; ++i) {
    r.eigenvalues[static_cast<std::size_t>(i)] = ev(i);
    r.max_real_eigenvalue = std::max(r.max_real_eigenvalue, ev(i).real());
  }
  const double gamma_m = drift.gamma_m();
  r.stable = r.max_real_eigenvalue < 0.0;
  r.marginal = r.stable && r.max_real_eigenvalue >= -kMarginalEpsilon * gamma_m;

  const double kappa = drift.kappa();
  const double gamma_d = drift.gamma_d();
  r.lambda_m = drift.lambda_m();
  r.lambda_d = drift.lambda_d();
  const double C0 = cooperativity(drift.g(), kappa, gamma_m);
  const double C1 = cooperativity(drift.G(), kappa, gamma_d);
  const double xi_m = 2.0 * r.lambda_m / gamma_m;
  const double xi_d = 2.0 * r.lambda_d / gamma_d;
  try {
    r.collective_C_m = one_sided(C0, C1, xi_d);
    r.lambda_m_max = modulation_bound(gamma_m, *r.collective_C_m);
  } catch (const SingularityError&) {
  }
  try {
    r.collective_C_d = one_sided(C1, C0, xi_m);
    r.lambda_d_max = modulation_bound(gamma_d, *r.collective_C_d);
  } catch (const SingularityError&) {
  }
  return r;
}

}  // namespace optosense
