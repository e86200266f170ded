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
#include <random>

#include "optosense/errors.hpp"
#include "optosense/spectra.hpp"
#include "oracles.hpp"

using namespace optosense;

namespace {

DerivedParams coop(const oracle::Point& p) {
  return from_cooperativities({p.C0, p.C1, p.kappa, p.gamma_m, p.gamma_d, 1e5, 1e-12});
}

double to_d(const oracle::real& r) { return static_cast<double>(r); }

}  // namespace

TEST_CASE("spectra match the 50-digit reference") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto env = ThermalEnvironment::from_occupations(0.3, 1000.0, 2.0);
  for (int k = 0; k < 40; ++k) {
    oracle::Point p{0.01 + u(rng), u(rng), std::pow(10.0, 1 + 4 * u(rng)), 1.0,
                    std::pow(10.0, -2 + 4 * u(rng)), 0.9 * u(rng), 0.9 * u(rng)};
    const DerivedParams d = coop(p);
    for (double w : {-1.3, 0.0, 0.4}) {
      const auto tf = transfer_functions(d, {p.xi_m, p.xi_d}, w);
      const auto ref = oracle::spectra(p, w);
      CHECK(oracle::rel(mechanical_response(tf), to_d(ref.R_m())) < 1e-9);
      CHECK(oracle::rel(output_spectrum(tf, env), to_d(ref.S_out(0.3, 1000.0, 2.0))) < 1e-9);
      CHECK(oracle::rel(added_noise(tf, env), to_d(ref.n_add(0.3, 2.0))) < 1e-9);
    }
  }
}

TEST_CASE("output spectrum decomposes into response times total noise") {
  const auto env = ThermalEnvironment::from_occupations(0.1, 50.0, 0.7);
  const DerivedParams d = coop({0.04, 0.5, 1e5, 1.0, 1.0, 0.0, 0.0});
  for (double w = -2.0; w <= 2.0; w += 0.05) {
    const auto tf = transfer_functions(d, {0.9, 0.2}, w);
    const double R = mechanical_response(tf);
    const double lhs = output_spectrum(tf, env);
    const double rhs = R * ((env.n_m + 0.5) + added_noise(tf, env));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("spectra are even in omega") {
  const auto env = ThermalEnvironment::from_occupations(0.0, 1000.0, 0.0);
  const DerivedParams d = coop({0.04, 0.5, 1e5, 1.0, 1.0, 0.0, 0.0});
  for (double w : {0.01, 0.3, 1.7}) {
    const auto a = transfer_functions(d, {0.9, 0.2}, w);
    const auto b = transfer_functions(d, {0.9, 0.2}, -w);
    CHECK(mechanical_response(a) == doctest::Approx(mechanical_response(b)).epsilon(1e-13));
    CHECK(added_noise(a, env) == doctest::Approx(added_noise(b, env)).epsilon(1e-13));
  }
}

TEST_CASE("on-resonance closed forms equal the general spectra at omega = 0") {
  const auto env = ThermalEnvironment::from_occupations(0.2, 10.0, 0.4);
  struct Case {
    double C0, C1, xi_m, xi_d;
  };
  for (const Case c : {Case{0.04, 0.0, 0.96, 0.0}, Case{0.04, 0.5, 0.98, 1.42},
                       Case{0.4, 0.5, 0.84, 1.32}, Case{0.04, 0.5, 0.9, 0.2},
                       Case{0.3, 0.1, 0.5, 0.7}}) {
    const oracle::Point p{c.C0, c.C1, 1e5, 1.0, 1.0, c.xi_m, c.xi_d};
    const auto ref = oracle::spectra(p, 0.0);
    const OnResonance on = on_resonance_formulas(c.C0, c.C1, c.xi_m, c.xi_d, env);
    CHECK(oracle::rel(on.R_m0, to_d(ref.R_m())) < 1e-9);
    CHECK(oracle::rel(on.n_add0, to_d(ref.n_add(0.2, 0.4))) < 1e-9);
    // The optical path at resonance is the squared gain amplitude.
    CHECK(std::abs(on.optical_gain() - to_d(ref.A2)) < 1e-9 * (1 + to_d(ref.A2)));
  }
}

TEST_CASE("impedance matching silences the optical path") {
  const auto env = ThermalEnvironment::from_occupations(0.0, 0.0, 0.0);
  const OnResonance on = on_resonance_formulas(0.04, 0.0, 0.96, 0.0, env);
  CHECK(std::abs(on.gain_amplitude) < 1e-14);
  CHECK(on.R_m0 == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(on.n_add0 < 1e-25);
  CHECK_THROWS_AS(on_resonance_formulas(0.04, 0.0, 1.0, 0.0, env), SingularityError);
}

TEST_CASE("off-modulation closed forms") {
  const auto env = ThermalEnvironment::from_occupations(0.0, 0.0, 0.0);
  const OffModulation off = off_modulation_formulas(0.5, 0.5, env);
  CHECK(off.n_add0 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(off.R_m0 == doctest::Approx(4 * 0.5 / 4.0).epsilon(1e-14));
  const auto warm = ThermalEnvironment::from_occupations(1.0, 0.0, 2.0);
  const oracle::Point p{0.3, 0.2, 1e5, 1.0, 1.0, 0.0, 0.0};
  const auto ref = oracle::spectra(p, 0.0);
  const OffModulation o2 = off_modulation_formulas(0.3, 0.2, warm);
  CHECK(oracle::rel(o2.n_add0, to_d(ref.n_add(1.0, 2.0))) < 1e-9);
  CHECK(oracle::rel(o2.R_m0, to_d(ref.R_m())) < 1e-9);
}

TEST_CASE("added noise is undefined without mechanical transduction") {
  const DerivedParams d = coop({0.0, 0.0, 10.0, 1.0, 1.0, 0.0, 0.0});
  const auto tf = transfer_functions(d, {0.2, 0.0}, 0.3);
  CHECK(mechanical_response(tf) == 0.0);
  CHECK_THROWS_AS(added_noise(tf, ThermalEnvironment{}), UndefinedAddedNoise);

  const auto grid = uniform_grid(-1, 1, 5);
  const SweepResult r = sweep(d, {0.2, 0.0}, ThermalEnvironment{}, grid);
  for (const auto& p : r.points) {
    CHECK(!p.n_add);
    CHECK(!p.error);
  }
}

TEST_CASE("sweep marks singular points and keeps going") {
  // Mirror modulated exactly at its static threshold xi_m = 1 + C0.
  const DerivedParams d = coop({0.04, 0.0, 10.0, 1.0, 1.0, 0.0, 0.0});
  const auto grid = uniform_grid(-1, 1, 5);
  const SweepResult r = sweep(d, {1.04, 0.0}, ThermalEnvironment{}, grid);
  REQUIRE(r.points.size() == 5);
  CHECK(r.points[2].error);
  CHECK(std::isnan(r.points[2].R_m));
  CHECK(!r.points[1].error);
  CHECK(!r.stability.stable);
}

TEST_CASE("grids") {
  const auto g = uniform_grid(-2, 2, 4001);
  CHECK(g.size() == 4001);
  CHECK(g.front() == -2.0);
  CHECK(g.back() == 2.0);
  CHECK(g[2000] == 0.0);
  const auto dg = default_grid(3.0);
  CHECK(dg.size() == kDefaultGridPoints);
  CHECK(dg.back() == doctest::Approx(6.0));
  CHECK_THROWS_AS(uniform_grid(1, 1, 10), InvalidArgument);
}

TEST_CASE("threshold measures interpolate crossings") {
  const std::vector<double> x{-1.0, -0.5, 0.0, 0.5, 1.0};
  const std::vector<std::optional<double>> tri{0.0, 0.5, 1.0, 0.5, 0.0};
  // 1 - |x| > 0.25 on (-0.75, 0.75)
  CHECK(threshold_measure(x, tri, 0.25, true) == doctest::Approx(1.5));
  CHECK(threshold_measure(x, tri, 0.25, false) == doctest::Approx(0.5));
  CHECK(threshold_window(x, tri, 0.25, true, 0.0) == doctest::Approx(1.5));

  const std::vector<std::optional<double>> two{1.0, 0.0, 1.0, 0.0, 1.0};
  CHECK(threshold_measure(x, two, 0.5, true) == doctest::Approx(1.0));
  CHECK(threshold_window(x, two, 0.5, true, 0.0) == doctest::Approx(0.5));
  CHECK(threshold_window(x, two, 0.5, false, 0.0) == doctest::Approx(0.0));

  const std::vector<std::optional<double>> gap{1.0, std::nullopt, 1.0, 1.0, 1.0};
  CHECK(threshold_window(x, gap, 0.5, true, 0.5) == doctest::Approx(1.0));
}
