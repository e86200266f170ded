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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "optosense/errors.hpp"
#include "optosense/ini.hpp"
#include "optosense/presets.hpp"
#include "optosense/runner.hpp"
#include "optosense/scenario.hpp"

using namespace optosense;
namespace fs = std::filesystem;

namespace {

ScenarioConfig preset(const std::string& name, const std::string& extra = "") {
  return load_scenario(parse_ini("[scenario]\npreset = " + name + "\n" + extra));
}

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string value_of(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return "<missing>";
}

int config_error_line(const std::string& text) {
  try {
    load_scenario(parse_ini(text));
  } catch (const ConfigError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

const char* const kLabSystem =
    "[system]\n"
    "kappa_hz = 1.3e6\n"
    "omega_m_rads = 1e5\n"
    "gamma_m_hz = 100\n"
    "mass_kg = 1e-12\n"
    "cavity_length_m = 178e-6\n"
    "omega_c_rads = 2.41494e15\n"
    "n_atoms = 1e5\n"
    "atom_mass_kg = 1.443160648e-25\n"
    "g_a_hz = 14.1e6\n"
    "omega_a_rads = 2.41419e15\n"
    "omega_r_rads = 2.37e4\n"
    "gamma_d_hz = 100\n"
    "beam_waist_m = 25e-6\n";

}  // namespace

TEST_CASE("ini reader") {
  const IniDocument doc = parse_ini(
      "\xEF\xBB\xBF# comment\n[System]\nKey = Value  # trailing\n; other\n"
      "path = a#b\n\n[next]\nx=1\n");
  REQUIRE(doc.sections.size() == 2);
  CHECK(doc.sections[0].name == "system");
  CHECK(doc.sections[0].find("key")->value == "Value");
  CHECK(doc.sections[0].find("path")->value == "a#b");
  CHECK(doc.sections[0].find("key")->line == 3);
  CHECK(doc.find("next")->find("x")->value == "1");
  CHECK(parse_ini(doc.dump()).dump() == doc.dump());

  const auto error_at = [](const std::string& text) -> std::pair<int, int> {
    try {
      parse_ini(text);
    } catch (const ConfigError& e) {
      return {static_cast<int>(e.line()), static_cast<int>(e.column())};
    }
    return {-1, -1};
  };
  CHECK(error_at("[a]\nx = 1\n  x = 2\n") == std::pair{3, 3});
  CHECK(error_at("[a]\nnot a pair\n") == std::pair{2, 1});
  CHECK(error_at("x = 1\n") == std::pair{1, 1});
  CHECK(error_at("[a\n") == std::pair{1, 1});
  CHECK(error_at("[a]\n[a]\n") == std::pair{2, 1});
}

TEST_CASE("frequency keys carry units") {
  const auto c = load_scenario(parse_ini(
      "[system]\nc0 = 0.1\nc1 = 0\nkappa_over_gamma_m = 10\ngamma_m_over_gamma_d = 1\n"
      "gamma_m_hz = 1\nomega_m_rads = 1e5\nmass_kg = 1e-12\n"));
  const auto& s = std::get<CooperativitySystem>(*c.system);
  CHECK(s.gamma_m == doctest::Approx(2 * constants::pi));
  CHECK(s.omega_m == 1e5);

  const std::string base =
      "[system]\nc0 = 0.1\nc1 = 0\nkappa_over_gamma_m = 10\ngamma_m_over_gamma_d = 1\n"
      "mass_kg = 1e-12\nomega_m_rads = 1e5\n";
  CHECK(config_error_line(base + "gamma_m = 5\n") == 8);
  CHECK(config_error_line(base + "gamma_m_hz = 5\ngamma_m_rads = 5\n") == 9);
  CHECK(config_error_line(base + "gamma_m_hz = 5\nbogus = 1\n") == 9);
  CHECK(config_error_line(base + "gamma_m_hz = five\n") == 8);
}

TEST_CASE("alternative field groups are exclusive") {
  const std::string sys = "[scenario]\npreset = fig2-curve1\n";
  CHECK(config_error_line(sys + "[modulation]\nxi_m = 0.9\nlambda_m_rads = 3\n") > 0);
  CHECK(config_error_line(sys + "[thermal]\ntemperature_k = 1\nn_m = 3\n") > 0);
  CHECK(config_error_line(sys + "[thermal]\n") > 0);
  CHECK(config_error_line(
            "[system]\nc0 = 0.1\nkappa_hz = 3\n") > 0);
  CHECK(config_error_line("[scenario]\npreset = fig9\n") == 2);
  CHECK(config_error_line("[weird]\n") == 1);
}

TEST_CASE("every preset loads, dumps and reloads unchanged") {
  for (const auto& p : presets()) {
    const ScenarioConfig c = preset(p.name);
    const std::string once = dump(c);
    const std::string twice = dump(load_scenario(parse_ini(once)));
    CHECK(once == twice);
    CHECK(parse_ini(once).dump() == once);
    // Expansion of an expanded document is the identity.
    const IniDocument expanded = expand_presets(parse_ini(once));
    CHECK(dump(parse_scenario(expanded)) == once);
  }
  CHECK(presets().size() == 12);
}

TEST_CASE("user sections replace preset sections") {
  const ScenarioConfig c = preset("fig2-curve3", "[modulation]\nxi_m = 0.5\nxi_d = 0.1\n");
  CHECK(c.modulation->first == 0.5);
  CHECK(std::get<CooperativitySystem>(*c.system).C1 == 0.5);
}

TEST_CASE("sweep CSV") {
  const ScenarioConfig c = preset("fig2-curve1");
  const SweepArtifacts a = run_sweep(c, "T1");
  const SweepArtifacts b = run_sweep(c, "T2");
  CHECK(a.csv == b.csv);
  CHECK(a.meta != b.meta);
  const auto rows = csv_rows(a.csv);
  REQUIRE(rows.size() == kDefaultGridPoints + 1);
  CHECK(a.csv.substr(0, a.csv.find('\n')) == kCsvHeader);
  const auto& mid = rows[1 + kDefaultGridPoints / 2];
  CHECK(std::stod(mid[0]) == 0.0);
  CHECK(std::stod(mid[1]) >= 24.0);
  CHECK(std::stod(mid[1]) <= 26.0);
  CHECK(std::stod(mid[2]) < 0.01);
  // Twelve significant digits, and the text reproduces itself.
  CHECK(mid[1].size() == std::string("2.50000000000e+01").size());
  for (std::size_t i = 1; i < rows.size(); i += 400) {
    for (const auto& cell : rows[i]) CHECK(format_value(std::stod(cell)) == cell);
  }

  const IniDocument meta = parse_ini(a.meta);
  CHECK(meta.find("run")->find("version")->value == version());
  CHECK(meta.find("result")->find("stable")->value == "true");
  CHECK(meta.find("system")->find("c0")->value == "0.04");
}

TEST_CASE("off-modulation sweep never amplifies") {
  const auto rows = csv_rows(run_sweep(preset("fig2-curve6"), "t").csv);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) < 1.0);
}

TEST_CASE("unstable configurations still sweep") {
  const SweepArtifacts a = run_sweep(preset("fig2-curve3", "[sweep]\npoints = 11\n"), "t");
  CHECK(parse_ini(a.meta).find("result")->find("stable")->value == "false");
  CHECK(csv_rows(a.csv).size() == 12);
}

TEST_CASE("solve-matching replaces the quoted xi_d") {
  ScenarioConfig c = preset("fig2-curve3", "[sweep]\npoints = 3\n");
  c.modulation->mode = ModulationMode::solve_matching;
  const IniDocument meta = parse_ini(run_sweep(c, "t").meta);
  CHECK(meta.find("result")->find("quoted_xi_d")->value == "1.42");
  CHECK(std::stod(meta.find("result")->find("solved_xi_d")->value) ==
        doctest::Approx(1.5));
  CHECK(std::abs(std::stod(meta.find("result")->find("matching_residual")->value)) < 1e-14);
}

TEST_CASE("point reports") {
  const std::string p1 = run_point(preset("fig2-curve1"), 0.0);
  CHECK(std::stod(value_of(p1, "R_m")) == doctest::Approx(25.0).epsilon(0.04));
  CHECK(value_of(p1, "sub_SQL") == "true");
  CHECK(value_of(p1, "gain_amplitude") != "<missing>");

  const std::string p3 = run_point(preset("fig2-curve3"), 0.0);
  CHECK(value_of(p3, "sub_SQL") == "true");
  CHECK(std::stod(value_of(p3, "n_add")) < 0.5);

  const std::string dead = run_point(
      load_scenario(parse_ini("[scenario]\npreset = fig2-curve1\n[system]\nc0 = 0\nc1 = 0\n"
                              "kappa_over_gamma_m = 10\ngamma_m_over_gamma_d = 1\n"
                              "gamma_m_rads = 1\nomega_m_rads = 1e5\nmass_kg = 1e-12\n")),
      0.3);
  CHECK(std::stod(value_of(dead, "R_m")) == 0.0);
  CHECK(value_of(dead, "n_add") == "undefined");

  // Mirror at its static threshold: a pole at omega = 0.
  const ScenarioConfig pole = load_scenario(parse_ini(
      "[system]\nc0 = 0.04\nc1 = 0\nkappa_over_gamma_m = 10\ngamma_m_over_gamma_d = 1\n"
      "gamma_m_rads = 1\nomega_m_rads = 1e5\nmass_kg = 1e-12\n"
      "[modulation]\nxi_m = 1.04\nxi_d = 0\n"));
  CHECK_THROWS_AS(run_point(pole, 0.0), SingularityError);
}

TEST_CASE("omega argument units") {
  CHECK(parse_omega("0gm", 5.0) == 0.0);
  CHECK(parse_omega("0.5gm", 4.0) == 2.0);
  CHECK(parse_omega("1e3rads", 4.0) == 1e3);
  CHECK(parse_omega("1hz", 4.0) == doctest::Approx(2 * constants::pi));
  CHECK(parse_omega("-2gm", 1.0) == -2.0);
  CHECK_THROWS_AS(parse_omega("3", 1.0), ConfigError);
  CHECK_THROWS_AS(parse_omega("gm", 1.0), ConfigError);
  CHECK_THROWS_AS(parse_omega("1khz", 1.0), ConfigError);
}

TEST_CASE("design recipe file") {
  const ScenarioConfig c =
      load_scenario(parse_ini(std::string(kLabSystem) + "[design]\nc0 = 0.04\nc1 = 0.5\n"));
  const DesignArtifacts d = run_design(c);
  CHECK(!d.feasible);
  const IniDocument recipe = parse_ini(d.text);
  const double delta_a = std::stod(recipe.find("recipe")->find("delta_a_rads")->value);
  CHECK(std::abs(delta_a / -7.96527e11 - 1) < 1e-3);
  CHECK(recipe.find("recipe")->find("feasible")->value == "false");
  // The file is itself a valid scenario.
  const ScenarioConfig back = parse_scenario([&] {
    IniDocument doc;
    for (const auto& s : recipe.sections) {
      if (s.name != "recipe") doc.sections.push_back(s);
    }
    return doc;
  }());
  CHECK(std::get<LabSystem>(*back.system).params.scattering_length > 0);

  const ScenarioConfig bare =
      load_scenario(parse_ini(std::string(kLabSystem) + "[design]\nc0 = 0.04\nc1 = 0\n"));
  CHECK_THROWS_WITH_AS(run_design(bare),
                       "bare system requires explicit atom detuning or no BEC section",
                       InvalidArgument);
  CHECK_THROWS_AS(run_design(preset("fig2-curve1")), ConfigError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ConfigError("x")) == kExitConfig);
  CHECK(exit_code_for(InvalidArgument("x")) == kExitConfig);
  CHECK(exit_code_for(SingularityError("x", 0.0)) == kExitInfeasible);
  CHECK(exit_code_for(InfeasibleDesign("x", {})) == kExitInfeasible);
  CHECK(exit_code_for(NumericError("x")) == kExitNumeric);
}

#ifdef OPTOSENSE_CLI
TEST_CASE("command-line binary") {
  const fs::path dir = fs::temp_directory_path() / "optosense_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const auto run = [&](const std::string& args) {
    const std::string cmd = std::string(OPTOSENSE_CLI) + " " + args + " > " +
                            (dir / "out.txt").string() + " 2> " + (dir / "err.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  const std::string curve1 = write("c1.ini", "[scenario]\npreset = fig2-curve1\n");
  CHECK(run("sweep " + curve1 + " -o " + (dir / "a.csv").string()) == 0);
  CHECK(run("sweep " + curve1 + " -o " + (dir / "b.csv").string()) == 0);
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(fs::exists(dir / "a.meta"));
  CHECK(run("point " + curve1 + " --omega 0gm") == 0);
  CHECK(run("stability " + curve1) == 0);
  CHECK(run("presets list") == 0);

  const std::string bad = write("bad.ini", "[system]\nomega_m = 3\n");
  CHECK(run("point " + bad + " --omega 0gm") == kExitConfig);
  CHECK(slurp(dir / "err.txt").find("2:1:") != std::string::npos);
  CHECK(run("sweep " + (dir / "missing.ini").string()) == kExitConfig);

  const std::string design = write("d.ini", std::string(kLabSystem) + "[design]\nc0 = 0.04\nc1 = 0.5\n");
  CHECK(run("design " + design + " -o " + (dir / "r.txt").string()) == kExitInfeasible);
  CHECK(fs::exists(dir / "r.txt"));

  const std::string pole = write(
      "pole.ini",
      "[system]\nc0 = 0.04\nc1 = 0\nkappa_over_gamma_m = 10\ngamma_m_over_gamma_d = 1\n"
      "gamma_m_rads = 1\nomega_m_rads = 1e5\nmass_kg = 1e-12\n"
      "[modulation]\nxi_m = 1.04\nxi_d = 0\n");
  CHECK(run("point " + pole + " --omega 0rads") == kExitInfeasible);
  fs::remove_all(dir);
}
#endif
