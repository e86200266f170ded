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

#include "optosense/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "optosense/errors.hpp"
#include "optosense/presets.hpp"

namespace optosense {
namespace {

constexpr double kTwoPi = 2.0 * constants::pi;

std::string num(double v) { return fmt::format("{}", v); }

double parse_number(std::string_view text, int line, int column,
                    std::string_view what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(v)) {
    throw ConfigError(fmt::format("'{}' is not a finite number for {}", text, what),
                      line, column);
  }
  return v;
}

// Walks one section, remembering which keys were read so that leftovers can be
// reported as unknown.
class SectionReader {
 public:
  explicit SectionReader(const IniSection& s) : s_(s) {}

  bool has(std::string_view key) const { return s_.has(key); }

  const IniEntry* take(std::string_view key) {
    const IniEntry* e = s_.find(key);
    if (e) used_.insert(e->key);
    return e;
  }

  std::optional<double> number(std::string_view key) {
    const IniEntry* e = take(key);
    if (!e) return std::nullopt;
    return parse_number(e->value, e->line, e->column, e->key);
  }

  double required(std::string_view key) {
    auto v = number(key);
    if (!v) fail(fmt::format("missing key '{}'", key));
    return *v;
  }

  // base_hz (x 2 pi) or base_rads; the bare base name is refused.
  std::optional<double> frequency(std::string_view base) {
    const std::string bare(base);
    if (const IniEntry* e = s_.find(bare)) {
      throw ConfigError(fmt::format("frequency key '{}' needs a unit suffix "
                                    "(_hz or _rads)",
                                    bare),
                        e->line, 1);
    }
    const auto hz = number(bare + "_hz");
    const auto rads = number(bare + "_rads");
    if (hz && rads) {
      const IniEntry* e = s_.find(bare + "_rads");
      throw ConfigError(
          fmt::format("both {0}_hz and {0}_rads given; keep one", bare), e->line, 1);
    }
    if (hz) return *hz * kTwoPi;
    return rads;
  }

  double required_frequency(std::string_view base) {
    auto v = frequency(base);
    if (!v) fail(fmt::format("missing key '{}_hz' or '{}_rads'", base, base));
    return *v;
  }

  bool has_frequency(std::string_view base) const {
    const std::string b(base);
    return s_.has(b) || s_.has(b + "_hz") || s_.has(b + "_rads");
  }

  std::optional<std::string> text(std::string_view key) {
    const IniEntry* e = take(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(fmt::format("[{}]: {}", s_.name, what), s_.line, 1);
  }

  void finish() const {
    for (const auto& e : s_.entries) {
      if (!used_.count(e.key)) {
        throw ConfigError(fmt::format("unknown key '{}' in [{}]", e.key, s_.name),
                          e.line, 1);
      }
    }
  }

 private:
  const IniSection& s_;
  std::set<std::string> used_;
};

const IniEntry* first_entry(const IniSection& s, std::initializer_list<std::string_view> keys) {
  for (const auto& e : s.entries) {
    for (auto k : keys) {
      if (e.key == k) return &e;
    }
  }
  return nullptr;
}

void exclusive_groups(const IniSection& s, bool a, bool b, std::string_view a_name,
                      std::string_view b_name) {
  if (a && b) {
    throw ConfigError(fmt::format("[{}] mixes the {} and {} forms; give exactly one",
                                  s.name, a_name, b_name),
                      s.line, 1);
  }
  if (!a && !b) {
    throw ConfigError(fmt::format("[{}] needs either the {} or the {} form", s.name,
                                  a_name, b_name),
                      s.line, 1);
  }
}

constexpr std::string_view kSystemFrequencies[] = {
    "kappa", "omega_m", "gamma_m", "omega_c", "g_a", "omega_a",
    "omega_r", "gamma_d", "e_l", "omega_l"};

SystemSection parse_system(const IniSection& s) {
  SectionReader r(s);
  for (auto base : kSystemFrequencies) {
    if (const IniEntry* e = s.find(base)) {
      throw ConfigError(fmt::format("frequency key '{}' needs a unit suffix "
                                    "(_hz or _rads)",
                                    base),
                        e->line, 1);
    }
  }
  const bool coop = first_entry(s, {"c0", "c1", "kappa_over_gamma_m",
                                    "gamma_m_over_gamma_d"}) != nullptr;
  const bool lab = r.has_frequency("kappa") || r.has_frequency("g_a") ||
                   r.has_frequency("omega_a") || r.has_frequency("omega_r") ||
                   r.has_frequency("gamma_d") || r.has_frequency("e_l") ||
                   r.has_frequency("omega_l") ||
                   first_entry(s, {"cavity_length_m", "n_atoms", "atom_mass_kg",
                                   "beam_waist_m", "scattering_length_m"}) != nullptr;
  exclusive_groups(s, coop, lab, "cooperativity", "laboratory");

  if (coop) {
    CooperativitySystem c;
    c.C0 = r.required("c0");
    c.C1 = r.required("c1");
    c.kappa_over_gamma_m = r.required("kappa_over_gamma_m");
    c.gamma_m_over_gamma_d = r.required("gamma_m_over_gamma_d");
    c.gamma_m = r.required_frequency("gamma_m");
    c.omega_m = r.required_frequency("omega_m");
    c.mass = r.required("mass_kg");
    c.omega_c = r.frequency("omega_c");
    r.finish();
    if (c.C0 < 0.0 || c.C1 < 0.0) r.fail("cooperativities must be >= 0");
    if (!(c.kappa_over_gamma_m > 0.0) || !(c.gamma_m_over_gamma_d > 0.0) ||
        !(c.gamma_m > 0.0) || !(c.omega_m > 0.0) || !(c.mass > 0.0)) {
      r.fail("rates, ratios and mass must be > 0");
    }
    return c;
  }

  LabSystem l;
  SystemParams& p = l.params;
  p.kappa = r.required_frequency("kappa");
  p.omega_m = r.required_frequency("omega_m");
  p.gamma_m = r.required_frequency("gamma_m");
  p.mass = r.required("mass_kg");
  p.cavity_length = r.required("cavity_length_m");
  p.omega_c = r.required_frequency("omega_c");
  p.n_atoms = r.required("n_atoms");
  p.atom_mass = r.required("atom_mass_kg");
  p.g_a = r.required_frequency("g_a");
  p.omega_a = r.required_frequency("omega_a");
  p.omega_R = r.required_frequency("omega_r");
  p.gamma_d = r.required_frequency("gamma_d");
  p.beam_waist = r.required("beam_waist_m");
  p.scattering_length = r.number("scattering_length_m").value_or(0.0);
  const auto e_l = r.frequency("e_l");
  const auto omega_l = r.frequency("omega_l");
  r.finish();
  if (e_l.has_value() != omega_l.has_value()) {
    r.fail("give both e_l and omega_l, or neither");
  }
  l.has_drive = e_l.has_value();
  p.E_L = e_l.value_or(0.0);
  p.omega_L = omega_l.value_or(0.0);
  return l;
}

ModulationSection parse_modulation(const IniSection& s) {
  SectionReader r(s);
  const bool xi = r.has("xi_m") || r.has("xi_d");
  const bool lambda = r.has_frequency("lambda_m") || r.has_frequency("lambda_d");
  exclusive_groups(s, xi, lambda, "xi", "lambda");
  ModulationSection m;
  m.from_lambda = lambda;
  if (xi) {
    m.first = r.required("xi_m");
    m.second = r.required("xi_d");
  } else {
    m.first = r.required_frequency("lambda_m");
    m.second = r.required_frequency("lambda_d");
  }
  if (const IniEntry* e = r.take("mode")) {
    if (e->value == "as-given") {
      m.mode = ModulationMode::as_given;
    } else if (e->value == "solve-matching") {
      m.mode = ModulationMode::solve_matching;
    } else {
      throw ConfigError("mode must be 'as-given' or 'solve-matching'", e->line,
                        e->column);
    }
  }
  r.finish();
  return m;
}

ThermalSection parse_thermal(const IniSection& s) {
  SectionReader r(s);
  const bool temp = r.has("temperature_k");
  const bool occ = r.has("n_c") || r.has("n_m") || r.has("n_d");
  exclusive_groups(s, temp, occ, "temperature", "occupation");
  ThermalSection t;
  if (temp) {
    t.temperature = r.required("temperature_k");
    if (*t.temperature < 0.0) r.fail("temperature_k must be >= 0");
  } else {
    t.n_c = r.required("n_c");
    t.n_m = r.required("n_m");
    t.n_d = r.required("n_d");
    if (t.n_c < 0.0 || t.n_m < 0.0 || t.n_d < 0.0) r.fail("occupations must be >= 0");
  }
  r.finish();
  return t;
}

SweepSection parse_sweep(const IniSection& s) {
  SectionReader r(s);
  SweepSection w;
  w.omega_min = r.number("omega_min").value_or(w.omega_min);
  w.omega_max = r.number("omega_max").value_or(w.omega_max);
  if (const IniEntry* e = r.take("points")) {
    const double v = parse_number(e->value, e->line, e->column, "points");
    if (v < 2.0 || v != std::floor(v) || v > 1e8) {
      throw ConfigError("points must be an integer >= 2", e->line, e->column);
    }
    w.points = static_cast<std::size_t>(v);
  }
  r.finish();
  if (!(w.omega_max > w.omega_min)) r.fail("omega_max must exceed omega_min");
  return w;
}

SignalSection parse_signal(const IniSection& s) {
  SectionReader r(s);
  const auto kind = r.text("kind");
  if (!kind) r.fail("missing key 'kind' (tone or table)");
  SignalSection sig;
  if (*kind == "tone") {
    ToneForce tone;
    tone.amplitude = r.required("amplitude_n");
    tone.frequency = r.required_frequency("frequency");
    tone.phase = r.number("phase_rad").value_or(-0.5 * constants::pi);
    if (tone.amplitude < 0.0 || tone.frequency < 0.0) {
      r.fail("tone amplitude and frequency must be >= 0");
    }
    sig.source = tone;
  } else if (*kind == "table") {
    const auto file = r.text("file");
    if (!file || file->empty()) r.fail("table signal needs 'file'");
    sig.source = *file;
  } else {
    r.fail("kind must be 'tone' or 'table'");
  }
  r.finish();
  return sig;
}

DesignSection parse_design(const IniSection& s) {
  SectionReader r(s);
  DesignSection d;
  d.target.C0 = r.required("c0");
  d.target.C1 = r.required("c1");
  d.target.delta_a = r.frequency("delta_a");
  r.finish();
  if (d.target.C0 < 0.0 || d.target.C1 < 0.0) r.fail("cooperativities must be >= 0");
  return d;
}

}  // namespace

CooperativitySpec CooperativitySystem::spec() const {
  CooperativitySpec s;
  s.C0 = C0;
  s.C1 = C1;
  s.kappa = kappa_over_gamma_m * gamma_m;
  s.gamma_m = gamma_m;
  s.gamma_d = gamma_m / gamma_m_over_gamma_d;
  s.omega_m = omega_m;
  s.mass = mass;
  return s;
}

IniDocument expand_presets(const IniDocument& doc) {
  const IniSection* sc = doc.find("scenario");
  const IniEntry* name = sc ? sc->find("preset") : nullptr;
  if (!name || name->value == "custom") return doc;
  const Preset* p = find_preset(name->value);
  if (!p) {
    throw ConfigError("unknown preset '" + name->value + "'", name->line, name->column);
  }
  IniDocument out;
  out.sections.push_back(*sc);
  for (const auto& s : p->document.sections) {
    const IniSection* user = doc.find(s.name);
    out.sections.push_back(user ? *user : s);
  }
  for (const auto& s : doc.sections) {
    if (!out.find(s.name)) out.sections.push_back(s);
  }
  return out;
}

ScenarioConfig parse_scenario(const IniDocument& doc) {
  ScenarioConfig c;
  for (const auto& s : doc.sections) {
    if (s.name == "scenario") {
      SectionReader r(s);
      c.preset = r.text("preset").value_or("custom");
      r.finish();
      if (c.preset != "custom" && !find_preset(c.preset)) {
        r.fail("unknown preset '" + c.preset + "'");
      }
    } else if (s.name == "system") {
      c.system = parse_system(s);
    } else if (s.name == "modulation") {
      c.modulation = parse_modulation(s);
    } else if (s.name == "thermal") {
      c.thermal = parse_thermal(s);
    } else if (s.name == "sweep") {
      c.sweep = parse_sweep(s);
    } else if (s.name == "signal") {
      c.signal = parse_signal(s);
    } else if (s.name == "design") {
      c.design = parse_design(s);
    } else {
      throw ConfigError("unknown section [" + s.name + "]", s.line, 1);
    }
  }
  return c;
}

ScenarioConfig load_scenario(const IniDocument& doc) {
  return parse_scenario(expand_presets(doc));
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  ScenarioConfig c = load_scenario(read_ini_file(path));
  c.base_dir = path.parent_path();
  return c;
}

IniDocument to_ini(const ScenarioConfig& c) {
  IniDocument doc;
  doc.section("scenario").set("preset", c.preset);

  if (c.system) {
    IniSection& s = doc.section("system");
    if (const auto* co = std::get_if<CooperativitySystem>(&*c.system)) {
      s.set("c0", num(co->C0));
      s.set("c1", num(co->C1));
      s.set("kappa_over_gamma_m", num(co->kappa_over_gamma_m));
      s.set("gamma_m_over_gamma_d", num(co->gamma_m_over_gamma_d));
      s.set("gamma_m_rads", num(co->gamma_m));
      s.set("omega_m_rads", num(co->omega_m));
      s.set("mass_kg", num(co->mass));
      if (co->omega_c) s.set("omega_c_rads", num(*co->omega_c));
    } else {
      const auto& l = std::get<LabSystem>(*c.system);
      const SystemParams& p = l.params;
      s.set("kappa_rads", num(p.kappa));
      s.set("omega_m_rads", num(p.omega_m));
      s.set("gamma_m_rads", num(p.gamma_m));
      s.set("mass_kg", num(p.mass));
      s.set("cavity_length_m", num(p.cavity_length));
      s.set("omega_c_rads", num(p.omega_c));
      s.set("n_atoms", num(p.n_atoms));
      s.set("atom_mass_kg", num(p.atom_mass));
      s.set("g_a_rads", num(p.g_a));
      s.set("omega_a_rads", num(p.omega_a));
      s.set("omega_r_rads", num(p.omega_R));
      s.set("gamma_d_rads", num(p.gamma_d));
      s.set("beam_waist_m", num(p.beam_waist));
      s.set("scattering_length_m", num(p.scattering_length));
      if (l.has_drive) {
        s.set("e_l_rads", num(p.E_L));
        s.set("omega_l_rads", num(p.omega_L));
      }
    }
  }

  if (c.modulation) {
    IniSection& s = doc.section("modulation");
    const auto& m = *c.modulation;
    if (m.from_lambda) {
      s.set("lambda_m_rads", num(m.first));
      s.set("lambda_d_rads", num(m.second));
    } else {
      s.set("xi_m", num(m.first));
      s.set("xi_d", num(m.second));
    }
    s.set("mode", m.mode == ModulationMode::as_given ? "as-given" : "solve-matching");
  }

  {
    IniSection& s = doc.section("thermal");
    if (c.thermal.temperature) {
      s.set("temperature_k", num(*c.thermal.temperature));
    } else {
      s.set("n_c", num(c.thermal.n_c));
      s.set("n_m", num(c.thermal.n_m));
      s.set("n_d", num(c.thermal.n_d));
    }
  }

  {
    IniSection& s = doc.section("sweep");
    s.set("omega_min", num(c.sweep.omega_min));
    s.set("omega_max", num(c.sweep.omega_max));
    s.set("points", std::to_string(c.sweep.points));
  }

  if (c.signal) {
    IniSection& s = doc.section("signal");
    if (const auto* tone = std::get_if<ToneForce>(&c.signal->source)) {
      s.set("kind", "tone");
      s.set("amplitude_n", num(tone->amplitude));
      s.set("frequency_rads", num(tone->frequency));
      s.set("phase_rad", num(tone->phase));
    } else {
      s.set("kind", "table");
      s.set("file", std::get<std::string>(c.signal->source));
    }
  }

  if (c.design) {
    IniSection& s = doc.section("design");
    s.set("c0", num(c.design->target.C0));
    s.set("c1", num(c.design->target.C1));
    if (c.design->target.delta_a) s.set("delta_a_rads", num(*c.design->target.delta_a));
  }
  return doc;
}

std::string dump(const ScenarioConfig& c) { return to_ini(c).dump(); }

DerivedParams resolve_derived(const ScenarioConfig& c) {
  if (!c.system) throw ConfigError("missing [system] section");
  if (const auto* co = std::get_if<CooperativitySystem>(&*c.system)) {
    return from_cooperativities(co->spec());
  }
  const auto& l = std::get<LabSystem>(*c.system);
  if (!l.has_drive) {
    throw ConfigError("laboratory [system] needs e_l and omega_l to be simulated");
  }
  return derive(l.params);
}

ResolvedModulation resolve_modulation(const ScenarioConfig& c, const DerivedParams& d) {
  if (!c.modulation) throw ConfigError("missing [modulation] section");
  const auto& m = *c.modulation;
  ResolvedModulation out;
  out.settings = m.from_lambda
                     ? ModulationSettings::from_lambda(m.first, m.second, d.gamma_m,
                                                       d.gamma_d)
                     : ModulationSettings{m.first, m.second};
  if (m.mode == ModulationMode::solve_matching) {
    if (const auto xi_d = solve_xi_d(d.C0, d.C1, out.settings.xi_m)) {
      out.quoted_xi_d = out.settings.xi_d;
      out.settings.xi_d = *xi_d;
    }
  }
  return out;
}

ThermalEnvironment resolve_thermal(const ScenarioConfig& c, const DerivedParams& d) {
  if (!c.thermal.temperature) {
    return ThermalEnvironment::from_occupations(c.thermal.n_c, c.thermal.n_m,
                                                c.thermal.n_d);
  }
  std::optional<double> omega_c;
  if (c.system) {
    if (const auto* co = std::get_if<CooperativitySystem>(&*c.system)) {
      omega_c = co->omega_c;
    } else {
      omega_c = std::get<LabSystem>(*c.system).params.omega_c;
    }
  }
  if (!omega_c) {
    throw ConfigError("temperature_k needs omega_c_hz or omega_c_rads in [system]");
  }
  const double omega_d = d.chain ? d.chain->omega_d : d.omega_m;
  return ThermalEnvironment::from_temperature(*c.thermal.temperature, *omega_c,
                                              d.omega_m, omega_d);
}

std::optional<ForceSignal> resolve_signal(const ScenarioConfig& c) {
  if (!c.signal) return std::nullopt;
  if (const auto* tone = std::get_if<ToneForce>(&c.signal->source)) {
    return ForceSignal{*tone};
  }
  std::filesystem::path file = std::get<std::string>(c.signal->source);
  if (file.is_relative()) file = c.base_dir / file;
  ForceSignal sig = read_force_table(file);
  validate(sig);
  return sig;
}

TabulatedForce read_force_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open force table '" + path.string() + "'");
  TabulatedForce t;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    double cols[3];
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      const std::size_t comma = line.find(',', start);
      if ((k < 2) != (comma != std::string::npos)) {
        throw ConfigError("force table rows need 'omega_rads, re, im'", line_no, 1);
      }
      std::string_view field(line.data() + start,
                             (comma == std::string::npos ? line.size() : comma) - start);
      while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
        field.remove_prefix(1);
      }
      while (!field.empty() &&
             (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
        field.remove_suffix(1);
      }
      cols[k] = parse_number(field, line_no, static_cast<int>(start) + 1, "force table");
      start = comma + 1;
    }
    if (!t.omega.empty() && !(cols[0] > t.omega.back())) {
      throw ConfigError("force table omega must increase strictly", line_no, 1);
    }
    t.omega.push_back(cols[0]);
    t.value.emplace_back(cols[1], cols[2]);
  }
  if (t.omega.size() < 2) throw ConfigError("force table needs at least two rows");
  return t;
}

}  // namespace optosense
