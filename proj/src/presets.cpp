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

#include "optosense/presets.hpp"

#include <fmt/format.h>

namespace optosense {
namespace {

// Mirror and cavity shared by every figure curve: kappa = 1e5 gamma_m,
// gamma_m = 2 pi x 100 Hz, omega_m = 1e5 rad/s, m = 1e-12 kg, 780 nm cavity.
// Bath: n_m = 1000, optical and Bogoliubov baths empty. The tone sits at
// omega_m with the 3-sigma amplitude for this device.
Preset make(std::string name, std::string description, double C0, double C1,
            double gm_over_gd, double xi_m, double xi_d) {
  const std::string text = fmt::format(
      "[system]\n"
      "c0 = {}\n"
      "c1 = {}\n"
      "kappa_over_gamma_m = 1e5\n"
      "gamma_m_over_gamma_d = {}\n"
      "gamma_m_hz = 100\n"
      "omega_m_rads = 1e5\n"
      "mass_kg = 1e-12\n"
      "omega_c_rads = 2.41494e15\n"
      "[modulation]\n"
      "xi_m = {}\n"
      "xi_d = {}\n"
      "mode = as-given\n"
      "[thermal]\n"
      "n_c = 0\n"
      "n_m = 1000\n"
      "n_d = 0\n"
      "[signal]\n"
      "kind = tone\n"
      "amplitude_n = 1.8e-19\n"
      "frequency_rads = 1e5\n",
      C0, C1, gm_over_gd, xi_m, xi_d);
  return {std::move(name), std::move(description), parse_ini(text)};
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  out.push_back(make("fig2-curve1", "no BEC, mechanical modulation only", 0.04, 0.0,
                     1.0, 0.96, 0.0));
  out.push_back(make("fig2-curve2", "hybrid, gamma_m/gamma_d = 100", 0.04, 0.5,
                     100.0, 0.98, 1.42));
  out.push_back(make("fig2-curve3", "hybrid, gamma_m/gamma_d = 1", 0.04, 0.5, 1.0,
                     0.98, 1.42));
  out.push_back(make("fig2-curve4", "hybrid, gamma_m/gamma_d = 0.01", 0.04, 0.5,
                     0.01, 0.98, 1.42));
  out.push_back(make("fig2-curve5", "hybrid, atomic modulation off", 0.04, 0.5, 1.0,
                     0.92, 0.0));
  out.push_back(make("fig2-curve6", "both modulations off, C0 = C1 = 0.5", 0.5, 0.5,
                     1.0, 0.0, 0.0));
  out.push_back(make("fig2-curve7", "hybrid, not impedance matched", 0.04, 0.5, 1.0,
                     0.9, 0.2));
  out.push_back(make("fig3-c0-0.04", "no BEC, C0 = 0.04", 0.04, 0.0, 1.0, 0.96, 0.0));
  out.push_back(make("fig3-c0-0.4", "no BEC, C0 = 0.4", 0.4, 0.0, 1.0, 0.6, 0.0));
  out.push_back(make("fig3-c0-0.04-c1-0.5", "hybrid, C1/C0 = 12.5", 0.04, 0.5, 1.0,
                     0.98, 1.42));
  out.push_back(make("fig3-c0-0.4-c1-0.5", "hybrid, C1/C0 = 1.25", 0.4, 0.5, 1.0,
                     0.84, 1.32));
  out.push_back(make("fig3-c0-0.04-c1-0.05", "hybrid, C1/C0 = 1.25, weak", 0.04,
                     0.05, 1.0, 0.30, 0.94));
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace optosense
