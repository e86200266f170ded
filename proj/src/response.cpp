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

#include "optosense/response.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

#include "optosense/errors.hpp"

namespace optosense {
namespace {

cdouble invert(cdouble z, double scale, double omega, const char* what) {
  if (std::abs(z) <= kPoleTolerance * scale) {
    throw SingularityError(std::string("pole in ") + what + " at omega = " +
                               std::to_string(omega),
                           omega);
  }
  return 1.0 / z;
}

template <int N>
Eigen::Matrix<cdouble, N, N> resolvent(const Eigen::Matrix<double, N, N>& a,
                                       double omega) {
  using M = Eigen::Matrix<cdouble, N, N>;
  const M m = cdouble(0.0, -omega) * M::Identity() - a.template cast<cdouble>();
  Eigen::FullPivLU<M> lu(m);
  if (!lu.isInvertible()) {
    throw SingularityError("(-i omega I - A) is singular at omega = " +
                               std::to_string(omega),
                           omega);
  }
  return lu.inverse();
}

}  // namespace

Susceptibility susceptibility_full(const DriftMatrix& drift, double omega) {
  return {omega, resolvent<6>(drift.a, omega)};
}

PhaseRow chi_phase_block(const DriftMatrix& drift, double omega) {
  // Block order is (Pa, Xb, Xd): first row holds chi22, chi23, chi25.
  const auto chi = resolvent<3>(drift.phase_block(), omega);
  return {chi(0, 0), chi(0, 1), chi(0, 2)};
}

PhaseRow chi_closed_form(const DerivedParams& d, const ModulationSettings& mods,
                         double omega) {
  const cdouble iw(0.0, omega);
  const cdouble inv0 = d.kappa / 2.0 - iw;
  const cdouble inv_m = d.gamma_m / 2.0 - mods.lambda_m(d.gamma_m) - iw;
  const cdouble inv_d = d.gamma_d / 2.0 - mods.lambda_d(d.gamma_d) - iw;
  const double g2 = d.g * d.g;
  const double G2 = d.G * d.G;

  // The nested forms share the denominator
  //   inv0 inv_m inv_d + g^2 inv_d + G^2 inv_m,
  // the determinant of the phase block. A mode with zero coupling factors out
  // of it exactly, so its own pole never reaches the optical row.
  const bool mirror = g2 != 0.0;
  const bool atoms = G2 != 0.0;
  const cdouble fm = mirror ? inv_m : 1.0;
  const cdouble fd = atoms ? inv_d : 1.0;
  cdouble det = inv0 * fm * fd;
  double scale = std::abs(det);
  if (mirror) {
    det += g2 * fd;
    scale += g2 * std::abs(fd);
  }
  if (atoms) {
    det += G2 * fm;
    scale += G2 * std::abs(fm);
  }
  const cdouble inv_det = invert(det, scale, omega, "phase-block susceptibility");

  PhaseRow row;
  row.chi22 = fm * fd * inv_det;
  row.chi23 = mirror ? d.g * fd * inv_det : cdouble(0.0);
  row.chi25 = atoms ? -d.G * fm * inv_det : cdouble(0.0);
  return row;
}

TransferFunctions transfer_functions(const PhaseRow& row, double omega,
                                     double kappa, double gamma_m,
                                     double gamma_d) {
  return {omega, 1.0 - kappa * row.chi22, std::sqrt(kappa * gamma_m) * row.chi23,
          std::sqrt(kappa * gamma_d) * row.chi25};
}

TransferFunctions transfer_functions(const DerivedParams& d,
                                     const ModulationSettings& mods,
                                     double omega) {
  return transfer_functions(chi_closed_form(d, mods, omega), omega, d.kappa,
                            d.gamma_m, d.gamma_d);
}

}  // namespace optosense
