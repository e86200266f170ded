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

#include <doctest.h>

#include <cmath>

#include "optosense/errors.hpp"
#include "optosense/params.hpp"
#include "oracles.hpp"

using namespace optosense;

namespace {

// Rb cavity with the mirror; drive chosen by the tests.
SystemParams rb_hardware() {
  SystemParams p;
  p.kappa = 2 * constants::pi * 1.3e6;
  p.omega_m = 1e5;
  p.gamma_m = 2 * constants::pi * 100;
  p.mass = 1e-12;
  p.cavity_length = 178e-6;
  p.omega_c = 2.41494e15;
  p.n_atoms = 1e5;
  p.atom_mass = 1.443160648e-25;
  p.g_a = 2 * constants::pi * 14.1e6;
  p.omega_a = 2.41419e15;
  p.omega_R = 2.37e4;
  p.gamma_d = 2 * constants::pi * 100;
  p.beam_waist = 25e-6;
  return p;
}

// Scattering length that makes omega_d = omega_m.
double matched_scattering_length(const SystemParams& p) {
  const double omega_sw = p.omega_m - 4 * p.omega_R;
  return omega_sw * p.atom_mass * p.cavity_length * p.beam_waist * p.beam_waist /
         (8 * constants::pi * constants::hbar * p.n_atoms);
}

}  // namespace

TEST_CASE("thermal occupation agrees with the geometric series") {
  for (double omega : {1e3, 1e5, 2.4e15}) {
    for (double T : {1e-6, 1e-3, 0.1, 4.0, 300.0}) {
      const oracle::real x =
          oracle::real(constants::hbar) * omega / (oracle::real(constants::k_B) * T);
      if (x > 700) continue;  // occupation underflows to zero in double
      const double expect = static_cast<double>(oracle::bose_series(x));
      CHECK(oracle::rel(thermal_occupation(omega, T), expect) < 1e-13);
    }
  }
  CHECK(thermal_occupation(1e5, 0.0) == 0.0);
  CHECK_THROWS_AS(thermal_occupation(1e5, -1.0), InvalidArgument);
  CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), InvalidArgument);
}

TEST_CASE("zero-point fluctuation and cooperativity") {
  const double x = zero_point_fluctuation(1e-12, 1e5);
  const auto expect = boost::multiprecision::sqrt(oracle::real(constants::hbar) /
                                                  (oracle::real(2) * 1e-12 * 1e5));
  CHECK(oracle::rel(x, static_cast<double>(expect)) < 1e-15);
  CHECK(cooperativity(2.0, 4.0, 1.0) == doctest::Approx(4.0));

  CooperativitySpec s{0.04, 0.5, 1e5, 2.0, 3.0, 1e5, 1e-12};
  const DerivedParams d = from_cooperativities(s);
  CHECK(oracle::rel(d.C0, 0.04) < 1e-15);
  CHECK(oracle::rel(d.C1, 0.5) < 1e-15);
  CHECK(oracle::rel(d.g, static_cast<double>(oracle::coupling(0.04, 1e5, 2.0))) < 1e-15);
  CHECK(!d.chain);
}

TEST_CASE("modulation settings convert between xi and lambda") {
  const auto m = ModulationSettings::from_lambda(3.0, 5.0, 4.0, 20.0);
  CHECK(m.xi_m == doctest::Approx(1.5));
  CHECK(m.xi_d == doctest::Approx(0.5));
  CHECK(m.lambda_m(4.0) == doctest::Approx(3.0));
  CHECK(m.lambda_d(20.0) == doctest::Approx(5.0));
}

TEST_CASE("derive lands on the red-sideband steady state") {
  SystemParams p = rb_hardware();
  p.scattering_length = matched_scattering_length(p);
  p.omega_L = p.omega_c - 1e6;

  // Independent chain: pick n so that the effective detuning equals omega_m.
  const double x_zp = std::sqrt(constants::hbar / (2 * p.mass * p.omega_m));
  const double g0 = x_zp * p.omega_c / p.cavity_length;
  const double delta_a = p.omega_a - p.omega_L;
  const double U0 = -p.g_a * p.g_a / delta_a;
  const double G0 = std::sqrt(2 * p.n_atoms) * U0 / 4;
  const double delta_0 = (p.omega_c - p.omega_L) + p.n_atoms * U0 / 2;
  const double per_photon = 2 * g0 * g0 / p.omega_m + 2 * G0 * G0 / p.omega_m;
  const double n = (delta_0 - p.omega_m) / per_photon;
  REQUIRE(n > 0);
  p.E_L = std::sqrt(n * (p.kappa * p.kappa / 4 + p.omega_m * p.omega_m));

  const DerivedParams d = derive(p);
  REQUIRE(d.chain);
  CHECK(oracle::rel(d.chain->omega_d, p.omega_m) < 1e-12);
  CHECK(oracle::rel(d.chain->a_bar * d.chain->a_bar, n) < 1e-9);
  CHECK(oracle::rel(d.chain->delta_0_bar, p.omega_m) < 1e-6);
  CHECK(oracle::rel(d.chain->delta_0, delta_0) < 1e-12);
  CHECK(oracle::rel(d.g, g0 * std::sqrt(n)) < 1e-9);
  CHECK(oracle::rel(d.G, G0 * std::sqrt(n)) < 1e-9);
  CHECK(oracle::rel(d.C0, 4 * g0 * g0 * n / (p.kappa * p.gamma_m)) < 1e-9);

  // The lowest-power branch is a different, self-consistent root.
  const DerivedParams low = derive(p, {SteadyStateBranch::lowest_power});
  const double n_low = low.chain->a_bar * low.chain->a_bar;
  CHECK(n_low < n);
  const double db = low.chain->delta_0_bar;
  CHECK(oracle::rel(n_low, p.E_L * p.E_L / (p.kappa * p.kappa / 4 + db * db)) < 1e-9);
}

TEST_CASE("derive rejects degenerate inputs") {
  SystemParams p = rb_hardware();
  p.scattering_length = matched_scattering_length(p);
  p.E_L = 1e8;
  p.omega_L = p.omega_a;
  CHECK_THROWS_AS(derive(p), SingularityError);

  p.omega_L = p.omega_c;
  p.kappa = -1;
  CHECK_THROWS_AS(derive(p), InvalidArgument);
}

TEST_CASE("undriven cavity has no photons and no coupling") {
  SystemParams p = rb_hardware();
  p.scattering_length = matched_scattering_length(p);
  p.omega_L = p.omega_c - 1e6;
  p.E_L = 0.0;
  const DerivedParams d = derive(p);
  CHECK(d.g == 0.0);
  CHECK(d.C0 == 0.0);
  CHECK(d.C1 == 0.0);
}

TEST_CASE("thermal environment from temperature") {
  const auto env = ThermalEnvironment::from_temperature(0.0, 2e15, 1e5, 1e5);
  CHECK(env.n_c == 0.0);
  CHECK(env.n_m == 0.0);
  REQUIRE(env.temperature);
  const auto warm = ThermalEnvironment::from_temperature(1.0, 2e15, 1e5, 2e5);
  CHECK(warm.n_m > warm.n_d);
  CHECK(warm.n_c == doctest::Approx(0.0));
}
