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

#include "optosense/runner.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "optosense/dynamics.hpp"
#include "optosense/errors.hpp"
#include "optosense/presets.hpp"
#include "optosense/response.hpp"
#include "optosense/sensing.hpp"

#ifndef OPTOSENSE_VERSION
#define OPTOSENSE_VERSION "0.0.0"
#endif

namespace optosense {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string exact(double v) { return fmt::format("{}", v); }

std::string flag(bool b) { return b ? "true" : "false"; }

struct Resolved {
  DerivedParams derived;
  ResolvedModulation mods;
  ThermalEnvironment env;
  std::optional<ForceSignal> signal;
};

Resolved resolve(const ScenarioConfig& c) {
  Resolved r;
  r.derived = resolve_derived(c);
  r.mods = resolve_modulation(c, r.derived);
  r.env = resolve_thermal(c, r.derived);
  r.signal = resolve_signal(c);
  return r;
}

std::optional<double> residual_of(const DerivedParams& d, const ModulationSettings& m) {
  try {
    return matching_residual(d.C0, d.C1, m.xi_m, m.xi_d);
  } catch (const SingularityError&) {
    return std::nullopt;
  }
}

void append_stability(std::string& out, const StabilityReport& s, double gamma_m) {
  out += fmt::format("stable = {}\n", flag(s.stable));
  out += fmt::format("marginal = {}\n", flag(s.marginal));
  out += fmt::format("max_real_eigenvalue_rads = {}\n", exact(s.max_real_eigenvalue));
  out += fmt::format("max_real_eigenvalue_over_gamma_m = {}\n",
                     exact(s.max_real_eigenvalue / gamma_m));
  out += fmt::format("lambda_m_rads = {}\n", exact(s.lambda_m));
  out += fmt::format("lambda_d_rads = {}\n", exact(s.lambda_d));
  const auto opt = [&](std::string_view key, const std::optional<double>& v) {
    out += fmt::format("{} = {}\n", key, v ? exact(*v) : "undefined");
  };
  opt("lambda_m_bound_rads", s.lambda_m_max);
  opt("lambda_d_bound_rads", s.lambda_d_max);
  opt("collective_c_m", s.collective_C_m);
  opt("collective_c_d", s.collective_C_d);
}

}  // namespace

const char* version() { return OPTOSENSE_VERSION; }

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const InfeasibleDesign*>(&e)) return kExitInfeasible;
  if (dynamic_cast<const SingularityError*>(&e)) return kExitInfeasible;
  if (dynamic_cast<const UndefinedAddedNoise*>(&e)) return kExitInfeasible;
  if (dynamic_cast<const InvalidArgument*>(&e)) return kExitConfig;
  return kExitNumeric;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // no "-0"
  return fmt::format("{:.11e}", v);
}

SweepArtifacts run_sweep(const ScenarioConfig& c, std::string_view timestamp) {
  const Resolved r = resolve(c);
  const DerivedParams& d = r.derived;
  const double gm = d.gamma_m;
  const auto grid = uniform_grid(c.sweep.omega_min * gm, c.sweep.omega_max * gm,
                                 c.sweep.points);

  SweepArtifacts out;
  out.result = sweep(d, r.mods.settings, r.env, grid);

  std::string csv(kCsvHeader);
  csv += '\n';
  std::size_t singular = 0;
  for (const auto& p : out.result.points) {
    double sens = kNaN;
    double ratio = kNaN;
    if (p.error) {
      ++singular;
    } else if (p.n_add) {
      if (r.signal) {
        const SensingPoint s = sense(*r.signal, d, r.env.n_m, *p.n_add, p.omega);
        sens = s.sensitivity;
        ratio = s.snr;
      } else {
        sens = std::sqrt(noise_force_spectrum(d, r.env.n_m, *p.n_add));
      }
    }
    csv += fmt::format("{},{},{},{},{},{}\n", format_value(p.omega / gm),
                       format_value(p.R_m), format_value(p.n_add.value_or(kNaN)),
                       format_value(p.S_out), format_value(sens), format_value(ratio));
  }
  out.csv = std::move(csv);

  const auto residual = residual_of(d, r.mods.settings);
  std::string meta = "[run]\n";
  meta += fmt::format("version = {}\n", version());
  meta += fmt::format("timestamp = {}\n", timestamp);
  meta += fmt::format("points = {}\n", out.result.points.size());
  meta += fmt::format("singular_points = {}\n", singular);
  meta += "\n[result]\n";
  meta += fmt::format("c0 = {}\n", exact(d.C0));
  meta += fmt::format("c1 = {}\n", exact(d.C1));
  meta += fmt::format("xi_m = {}\n", exact(r.mods.settings.xi_m));
  meta += fmt::format("xi_d = {}\n", exact(r.mods.settings.xi_d));
  if (r.mods.quoted_xi_d) {
    meta += fmt::format("quoted_xi_d = {}\n", exact(*r.mods.quoted_xi_d));
    meta += fmt::format("solved_xi_d = {}\n", exact(r.mods.settings.xi_d));
  }
  meta += fmt::format("matching_residual = {}\n",
                      residual ? exact(*residual) : "undefined");
  meta += fmt::format("amplification_bandwidth_over_gamma_m = {}\n",
                      exact(out.result.amplification_bandwidth / gm));
  meta += fmt::format("sub_sql_bandwidth_over_gamma_m = {}\n",
                      exact(out.result.sub_sql_bandwidth / gm));
  append_stability(meta, out.result.stability, gm);
  meta += '\n';
  meta += dump(c);
  out.meta = std::move(meta);
  return out;
}

std::string run_point(const ScenarioConfig& c, double omega) {
  const Resolved r = resolve(c);
  const DerivedParams& d = r.derived;
  const ModulationSettings& m = r.mods.settings;

  const TransferFunctions tf = transfer_functions(d, m, omega);
  const double R = mechanical_response(tf);
  const double S_out = output_spectrum(tf, r.env);
  std::optional<double> n_add;
  if (R > 0.0) n_add = added_noise(tf, r.env);

  std::string out;
  out += fmt::format("omega_rads={}\n", exact(omega));
  out += fmt::format("omega_over_gamma_m={}\n", exact(omega / d.gamma_m));
  out += fmt::format("xi_m={}\nxi_d={}\n", exact(m.xi_m), exact(m.xi_d));
  out += fmt::format("R_m={}\n", format_value(R));
  out += fmt::format("S_out={}\n", format_value(S_out));
  if (n_add) {
    const double S_N = noise_force_spectrum(d, r.env.n_m, *n_add);
    out += fmt::format("n_add={}\n", format_value(*n_add));
    out += fmt::format("sub_SQL={}\n", flag(*n_add < kAddedNoiseSQL));
    out += fmt::format("S_N={}\n", format_value(S_N));
    out += fmt::format("sensitivity_N_per_sqrtHz={}\n", format_value(std::sqrt(S_N)));
    if (r.signal) {
      const SensingPoint s = sense(*r.signal, d, r.env.n_m, *n_add, omega);
      out += fmt::format("snr={}\n", format_value(s.snr));
      out += fmt::format("detected={}\n", flag(s.snr > kConfidenceLevel));
    }
  } else {
    out += "n_add=undefined\n";
    out += "sub_SQL=undefined\n";
    out += "sensitivity_N_per_sqrtHz=undefined\n";
  }

  if (omega == 0.0) {
    try {
      const OnResonance on = on_resonance_formulas(d.C0, d.C1, m.xi_m, m.xi_d, r.env);
      out += fmt::format("gain_amplitude={}\n", format_value(on.gain_amplitude));
      out += fmt::format("optical_gain={}\n", format_value(on.optical_gain()));
      out += fmt::format("R_m0_closed_form={}\n", format_value(on.R_m0));
      out += fmt::format("n_add0_closed_form={}\n", format_value(on.n_add0));
    } catch (const Error&) {
      out += "gain_amplitude=undefined\n";
    }
    if (m.xi_m == 0.0 && m.xi_d == 0.0 && d.C0 > 0.0) {
      const OffModulation off = off_modulation_formulas(d.C0, d.C1, r.env);
      out += fmt::format("R_m0_off_modulation={}\n", format_value(off.R_m0));
      out += fmt::format("n_add0_off_modulation={}\n", format_value(off.n_add0));
    }
  }
  const StabilityReport s = stability_eigen(build_drift_matrix(d, m));
  out += fmt::format("stable={}\n", flag(s.stable));
  return out;
}

std::string run_stability(const ScenarioConfig& c) {
  const Resolved r = resolve(c);
  const DerivedParams& d = r.derived;
  const OperatingPoint op = verify_operating_point(d, r.mods.settings);

  std::string out;
  out += fmt::format("c0 = {}\nc1 = {}\n", exact(d.C0), exact(d.C1));
  out += fmt::format("xi_m = {}\nxi_d = {}\n", exact(op.xi_m), exact(op.xi_d));
  if (r.mods.quoted_xi_d) {
    out += fmt::format("quoted_xi_d = {}\n", exact(*r.mods.quoted_xi_d));
  }
  append_stability(out, op.stability, d.gamma_m);
  for (std::size_t i = 0; i < op.stability.eigenvalues.size(); ++i) {
    const auto z = op.stability.eigenvalues[i] / d.gamma_m;
    out += fmt::format("eigenvalue_{}_over_gamma_m = {} {:+}i\n", i, exact(z.real()),
                       z.imag());
  }
  const auto thr = static_threshold_xi_m(d.C0, d.C1, op.xi_d);
  out += fmt::format("static_threshold_xi_m = {}\n", thr ? exact(*thr) : "undefined");
  out += fmt::format("matching_residual = {}\n",
                     op.matching_residual ? exact(*op.matching_residual) : "undefined");
  out += fmt::format("matching_budget_ok = {}\n", flag(within_matching_budget(d.C0, d.C1)));
  if (op.bogoliubov_mismatch) {
    out += fmt::format("bogoliubov_mismatch = {}\n", exact(*op.bogoliubov_mismatch));
    out += fmt::format("detuning_mismatch = {}\n", exact(*op.detuning_mismatch));
    out += fmt::format("red_detuned = {}\n", flag(op.red_detuned));
  }
  return out;
}

DesignArtifacts run_design(const ScenarioConfig& c) {
  if (!c.design) throw ConfigError("design needs a [design] section");
  if (!c.system || !std::holds_alternative<LabSystem>(*c.system)) {
    throw ConfigError("design needs a laboratory-form [system] section");
  }
  const LabSystem& hw = std::get<LabSystem>(*c.system);

  DesignArtifacts out;
  try {
    out.recipe = design_experiment(c.design->target, hw.params);
    out.feasible = true;
  } catch (const InfeasibleDesign& e) {
    out.recipe = e.partial();
    out.reason = e.what();
  }
  const LabRecipe& r = out.recipe;

  std::string t = "[recipe]\n";
  t += fmt::format("feasible = {}\n", flag(out.feasible));
  if (!out.feasible) t += fmt::format("reason = {}\n", out.reason);
  const auto line = [&](std::string_view key, double v, std::string_view unit) {
    t += fmt::format("{} = {}  # {}\n", key, exact(v), unit);
  };
  line("target_c0", r.target_C0, "dimensionless");
  line("target_c1", r.target_C1, "dimensionless");
  line("omega_sw_rads", r.omega_sw, "rad/s");
  line("delta_a_rads", r.delta_a, "rad/s");
  line("omega_l_rads", r.omega_L, "rad/s");
  line("n_cav", r.n_cav, "photons");
  line("e_l_rads", r.E_L, "rad/s");
  line("x_zp_m", r.x_zp, "m");
  line("optomechanical_g0_rads", r.g0, "rad/s");
  line("lattice_u0_rads", r.U0, "rad/s");
  line("atomic_g0_rads", r.G0, "rad/s");
  line("omega_d_rads", r.omega_d, "rad/s");
  line("delta_0_rads", r.delta_0, "rad/s");
  line("scattering_length_m", r.scattering_length, "m");
  line("achieved_c0", r.achieved_C0, "dimensionless");
  line("achieved_c1", r.achieved_C1, "dimensionless");
  for (std::size_t i = 0; i < r.warnings.size(); ++i) {
    t += fmt::format("warning_{} = {}\n", i + 1, r.warnings[i]);
  }

  // The hardware with the recipe applied, ready to be simulated.
  ScenarioConfig applied;
  LabSystem sys = hw;
  if (out.feasible) {
    sys.params = apply_recipe(hw.params, r);
    sys.has_drive = true;
  } else {
    sys.params.scattering_length = r.scattering_length;
  }
  applied.system = sys;
  applied.design = c.design;
  IniDocument doc = to_ini(applied);
  for (const auto& s : doc.sections) {
    if (s.name != "system" && s.name != "design") continue;
    t += fmt::format("\n[{}]\n", s.name);
    for (const auto& e : s.entries) t += fmt::format("{} = {}\n", e.key, e.value);
  }
  out.text = std::move(t);
  return out;
}

std::string list_presets() {
  std::string out;
  for (const auto& p : presets()) out += fmt::format("{:<24} {}\n", p.name, p.description);
  return out;
}

double parse_omega(std::string_view text, double gamma_m) {
  std::size_t split = text.size();
  while (split > 0 && std::isalpha(static_cast<unsigned char>(text[split - 1]))) --split;
  const std::string_view number = text.substr(0, split);
  const std::string_view unit = text.substr(split);
  double v = 0.0;
  const char* first = number.data();
  if (!number.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, number.data() + number.size(), v);
  if (number.empty() || ec != std::errc() || ptr != number.data() + number.size() ||
      !std::isfinite(v)) {
    throw ConfigError("--omega expects <value><unit>, got '" + std::string(text) + "'");
  }
  if (unit == "rads") return v;
  if (unit == "hz") return 2.0 * constants::pi * v;
  if (unit == "gm") return v * gamma_m;
  throw ConfigError("--omega unit must be rads, hz or gm, got '" + std::string(unit) +
                    "'");
}

}  // namespace optosense
