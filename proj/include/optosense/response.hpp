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

#ifndef OPTOSENSE_RESPONSE_HPP
#define OPTOSENSE_RESPONSE_HPP

#include <complex>

#include <Eigen/Core>

#include "optosense/dynamics.hpp"
#include "optosense/params.hpp"

namespace optosense {

using cdouble = std::complex<double>;
using Matrix6cd = Eigen::Matrix<cdouble, 6, 6>;

// Fourier convention: d/dt -> -i omega, so chi(omega) = (-i omega I - A)^-1.

/// A denominator below this fraction of the terms it cancels is a pole.
inline constexpr double kPoleTolerance = 1e-13;

struct Susceptibility {
  double omega = 0.0;
  Matrix6cd chi = Matrix6cd::Zero();
};

/// Dense inversion of the full 6x6 system. Throws SingularityError (value =
/// omega) when (-i omega I - A) is singular.
Susceptibility susceptibility_full(const DriftMatrix& drift, double omega);

/// The three elements of the Pa row that reach the output phase quadrature.
struct PhaseRow {
  cdouble chi22;  // Pa <- Pa_in
  cdouble chi23;  // Pa <- Xb_in
  cdouble chi25;  // Pa <- Xd_in
};

/// Closed forms built from the bare inverse susceptibilities
/// chi0^-1 = kappa/2 - i omega and chi_-m(-d)^-1 = gamma/2 - lambda - i omega.
PhaseRow chi_closed_form(const DerivedParams& derived,
                         const ModulationSettings& mods, double omega);

/// Same elements by inverting only the (Pa, Xb, Xd) block.
PhaseRow chi_phase_block(const DriftMatrix& drift, double omega);

/// Coefficients of delta Pa_out = A Pa_in + B Xb'_in + D Xd_in.
struct TransferFunctions {
  double omega = 0.0;
  cdouble A_coef;
  cdouble B_coef;
  cdouble D_coef;
};

TransferFunctions transfer_functions(const DerivedParams& derived,
                                     const ModulationSettings& mods,
                                     double omega);

/// Builds the coefficients from already-known susceptibility elements.
TransferFunctions transfer_functions(const PhaseRow& row, double omega,
                                     double kappa, double gamma_m,
                                     double gamma_d);

}  // namespace optosense

#endif  // OPTOSENSE_RESPONSE_HPP
