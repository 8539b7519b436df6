/*
 Copyright 2026 ausmamc contributors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "ausmamc/io.hpp"

using namespace ausmamc;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ausmamc_test_" + name);
}

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> out;
  std::istringstream stream(line);
  std::string cell;
  while (std::getline(stream, cell, ',')) {
    out.push_back(std::strtod(cell.c_str(), nullptr));
  }
  return out;
}

}  // namespace

TEST_CASE("presets carry the stock tables verbatim") {
  const ScenarioConfig a = load_scenario("A");
  REQUIRE(a.name == "A");
  REQUIRE(a.inertia(0, 0) == 20.0);
  REQUIRE(a.inertia(0, 2) == 0.9);
  REQUIRE(a.inertia(1, 1) == 17.0);
  REQUIRE(a.inertia(2, 0) == 0.9);
  REQUIRE(a.inertia(2, 2) == 15.0);
  REQUIRE(a.inertia(0, 1) == 0.0);
  REQUIRE(a.q_initial.q0 == 1.0);
  REQUIRE(a.q_initial.qv.isZero(0.0));
  REQUIRE(a.omega_initial.isZero(0.0));
  REQUIRE(a.q_desired.q0 == 0.8832);
  REQUIRE(a.q_desired.qv == Vec3(0.3, -0.2, -0.3));
  REQUIRE(a.omega_desired.isZero(0.0));
  REQUIRE(a.controller.params.lambda == 2.0);
  REQUIRE(a.controller.params.gamma1 == 10.0);
  REQUIRE(a.controller.params.epsilon == 0.5);
  REQUIRE(a.disturbance.amplitude == Vec3(1e-2, 0.5e-2, 1e-2));
  REQUIRE(a.disturbance.frequency == 0.05);
  REQUIRE(a.sim.dt == 1e-3);
  REQUIRE(a.sim.t_final == 20.0);

  const ScenarioConfig b = load_scenario("b");
  REQUIRE(b.q_desired.q0 == -0.6403);
  REQUIRE(b.q_desired.qv == Vec3(-0.5, -0.3, 0.5));

  // The echo into summaries keeps the same exact values.
  const nlohmann::json echo = scenario_json(a);
  REQUIRE(echo["q_desired"][0].get<double>() == 0.8832);
  REQUIRE(echo["q_desired"][1].get<double>() == 0.3);
  REQUIRE(echo["J"][0][2].get<double>() == 0.9);
  REQUIRE(echo["controller"]["gamma1"].get<double>() == 10.0);
  REQUIRE(echo["disturbance"]["amplitude"][1].get<double>() == 0.005);
}

TEST_CASE("scenario text round-trips field-exactly") {
  ScenarioConfig sc = preset_scenario_b();
  sc.name = "roundtrip";
  sc.controller.switching = SwitchingMode::exact_sign;
  sc.controller.params.gamma1 = 12.5;
  sc.disturbance.amplitude = Vec3(0.017, 0.0055, 1.0 / 3.0);
  sc.sim.dt = 1.0 / 3000.0;
  sc.sim.record_every = 7;
  sc.sim.controller_hold = true;

  const ScenarioConfig back = parse_scenario_text(scenario_to_text(sc), "<roundtrip>");
  REQUIRE(back.name == sc.name);
  REQUIRE(back.inertia == sc.inertia);
  REQUIRE(back.q_initial.q0 == sc.q_initial.q0);
  REQUIRE(back.q_initial.qv == sc.q_initial.qv);
  REQUIRE(back.q_desired.q0 == sc.q_desired.q0);
  REQUIRE(back.q_desired.qv == sc.q_desired.qv);
  REQUIRE(back.omega_initial == sc.omega_initial);
  REQUIRE(back.omega_desired == sc.omega_desired);
  REQUIRE(back.disturbance.amplitude == sc.disturbance.amplitude);
  REQUIRE(back.disturbance.frequency == sc.disturbance.frequency);
  REQUIRE(back.disturbance.pattern == sc.disturbance.pattern);
  REQUIRE(back.controller.type == sc.controller.type);
  REQUIRE(back.controller.switching == sc.controller.switching);
  REQUIRE(back.controller.params.lambda == sc.controller.params.lambda);
  REQUIRE(back.controller.params.gamma1 == sc.controller.params.gamma1);
  REQUIRE(back.controller.params.epsilon == sc.controller.params.epsilon);
  REQUIRE(back.controller.params.qev_floor == sc.controller.params.qev_floor);
  REQUIRE(back.sim.dt == sc.sim.dt);
  REQUIRE(back.sim.t_final == sc.sim.t_final);
  REQUIRE(back.sim.record_every == sc.sim.record_every);
  REQUIRE(back.sim.controller_hold == sc.sim.controller_hold);
  REQUIRE(back.sim.renormalize == sc.sim.renormalize);

  // And through the filesystem.
  const auto path = temp_path("roundtrip.cfg");
  save_scenario(sc, path.string());
  const ScenarioConfig loaded = load_scenario(path.string());
  REQUIRE(loaded.q_desired.q0 == sc.q_desired.q0);
  REQUIRE(loaded.sim.dt == sc.sim.dt);
  std::filesystem::remove(path);
}

TEST_CASE("parse errors carry file, line, and key") {
  const std::string bad_number =
      "scenario.J.row0 = [20, 0, 0.9]\n"
      "scenario.J.row1 = [0, 17, 0]\n"
      "scenario.J.row2 = [0.9, 0, 15]\n"
      "scenario.q_desired = [1, 0, 0, 0]\n"
      "sim.dt = fast\n";
  try {
    parse_scenario_text(bad_number, "test.cfg");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    REQUIRE(msg.find("test.cfg:5") != std::string::npos);
    REQUIRE(msg.find("sim.dt") != std::string::npos);
  }

  REQUIRE_THROWS_AS(parse_scenario_text("scenario.unknown = 1\n", "x"), ParseError);
  REQUIRE_THROWS_AS(parse_scenario_text("sim.dt = 0.001\nsim.dt = 0.002\n", "x"),
                    ParseError);
  REQUIRE_THROWS_AS(parse_scenario_text("scenario.q_desired = [1, 0, 0]\n", "x"),
                    ParseError);
  // Missing required keys.
  REQUIRE_THROWS_AS(parse_scenario_text("sim.dt = 0.001\n", "x"), ParseError);
}

TEST_CASE("validation lists every violated invariant") {
  ScenarioConfig sc = preset_scenario_a();
  sc.q_desired = Quaternion(0.9, 0.0, 0.0, 0.0);  // far off unit norm
  sc.controller.params.gamma1 = 0.001;            // below the disturbance bound
  sc.omega_desired = Vec3(0.0, 0.0, 0.1);         // tracking, unsupported
  try {
    ensure_valid(sc);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(e.violations().size() >= 3);
    const std::string msg = e.what();
    REQUIRE(msg.find("q_desired") != std::string::npos);
    REQUIRE(msg.find("gamma1") != std::string::npos);
    REQUIRE(msg.find("omega_desired") != std::string::npos);
  }
}

TEST_CASE("off-unit published quaternions warn but load exactly") {
  const ValidationReport report = validate_scenario(preset_scenario_a());
  REQUIRE(report.ok());
  bool mentioned = false;
  for (const auto& w : report.warnings) {
    mentioned = mentioned || w.find("q_desired") != std::string::npos;
  }
  REQUIRE(mentioned);  // ||q_d|| - 1 ~ 2e-5 in the published table
}

TEST_CASE("csv layout, determinism, and bit round-trip") {
  ScenarioConfig sc = preset_scenario_a();
  sc.sim.t_final = 0.2;
  const Trajectory traj = run(sc);
  const std::string text = csv_text(traj);
  REQUIRE(csv_text(run(sc)) == text);  // identical invocations, identical bytes

  std::istringstream stream(text);
  std::string header;
  std::getline(stream, header);
  REQUIRE(header == kCsvHeader);

  std::string first_row;
  std::getline(stream, first_row);
  const std::vector<double> row = parse_csv_row(first_row);
  REQUIRE(row.size() == 26);
  REQUIRE(row[0] == 0.0);
  REQUIRE(row[1] == 0.8832);            // qe0 as configured
  REQUIRE(row[2] == -0.3);
  REQUIRE(std::abs(row[14] - 55.93835970164155) <= 1e-11);  // theta_deg
  REQUIRE(std::abs(row[14] - 55.93) <= 0.01);

  // Every stored column parses back bit-equal.
  std::string line;
  size_t i = 0;
  std::istringstream again(text);
  std::getline(again, line);  // header
  constexpr double kRadToDeg = 180.0 / std::numbers::pi;
  while (std::getline(again, line)) {
    const std::vector<double> r = parse_csv_row(line);
    const TrajectorySample& s = traj.samples.at(i++);
    REQUIRE(r[0] == s.t);
    REQUIRE(r[1] == s.q_e.q0);
    REQUIRE(r[2] == s.q_e.qv.x());
    REQUIRE(r[3] == s.q_e.qv.y());
    REQUIRE(r[4] == s.q_e.qv.z());
    for (int k = 0; k < 3; ++k) {
      REQUIRE(r[5 + k] == s.omega_e[k]);
      REQUIRE(r[8 + k] == s.u[k]);
      REQUIRE(r[11 + k] == s.s[k]);
      REQUIRE(r[23 + k] == s.d[k]);
    }
    REQUIRE(r[14] == s.theta * kRadToDeg);
    REQUIRE(r[18] == s.v1);
    REQUIRE(r[19] == s.v2);
    REQUIRE(r[20] == s.g);
    REQUIRE(r[21] == s.g_dot);
    REQUIRE(r[22] == s.gamma2);
  }
  REQUIRE(i == traj.samples.size());
}

TEST_CASE("csv of a single-sample run is header plus one row") {
  ScenarioConfig sc = preset_scenario_a();
  sc.sim.t_final = 0.0;
  const std::string text = csv_text(run(sc));
  size_t lines = 0;
  for (char c : text) lines += c == '\n';
  REQUIRE(lines == 2);

  Trajectory empty;
  REQUIRE_THROWS_AS(emit_csv(empty, "/tmp/never-written.csv"), ValidationError);
}

TEST_CASE("summary json carries metrics, events, echo, and thresholds") {
  ScenarioConfig sc = preset_scenario_a();
  sc.sim.t_final = 8.0;
  const Trajectory traj = run(sc);
  const RunMetrics metrics = compute_metrics(traj);
  const nlohmann::json j = summary_json(metrics, traj, sc);

  REQUIRE(j["schema_version"].get<int>() == kSummarySchemaVersion);
  REQUIRE(j["scenario"]["q_desired"][0].get<double>() == 0.8832);
  REQUIRE(j["events"]["surface_reach"].is_number());
  REQUIRE(j["events"]["equilibrium_reach"].is_number());
  REQUIRE(j["metrics"]["unwinding_detected"].get<bool>() == false);
  REQUIRE(std::abs(j["metrics"]["theta_initial_deg"].get<double>() - 55.938) <= 1e-2);
  REQUIRE(j["thresholds"]["equilibrium_hold_s"].get<double>() == 1.0);

  // Runs too short for events keep explicit nulls.
  sc.sim.t_final = 0.05;
  const Trajectory stub = run(sc);
  const nlohmann::json j2 = summary_json(compute_metrics(stub), stub, sc);
  REQUIRE(j2["events"]["surface_reach"].is_null());
  REQUIRE(j2["events"]["equilibrium_reach"].is_null());
  REQUIRE(j2["metrics"]["settling_time_s"].is_null());
}

TEST_CASE("summary files round-trip and compare clean against themselves") {
  ScenarioConfig sc = preset_scenario_a();
  sc.sim.t_final = 8.0;
  const Trajectory traj = run(sc);
  const RunMetrics metrics = compute_metrics(traj);

  const auto path_a = temp_path("summary_a.json");
  const auto path_b = temp_path("summary_b.json");
  emit_summary(metrics, traj, sc, path_a.string());
  emit_summary(metrics, traj, sc, path_b.string());

  const nlohmann::json a = load_summary(path_a.string());
  const nlohmann::json b = load_summary(path_b.string());
  REQUIRE(a == b);
  REQUIRE(a["metrics"]["theta_travel_deg"].get<double>() ==
          metrics.theta_travel * (180.0 / std::numbers::pi));

  const ComparisonReport report = compare_summaries(a, b);
  REQUIRE(report.rows.size() == 5);
  for (const auto& row : report.rows) {
    if (row.metric == "unwinding_detected") {
      REQUIRE(row.delta == "match");
    } else {
      REQUIRE((row.delta == "0" || row.delta == "-0"));
    }
  }
  REQUIRE(report.to_string().find("settling_time_s") != std::string::npos);

  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
}

TEST_CASE("schema mismatch is rejected") {
  ScenarioConfig sc = preset_scenario_a();
  sc.sim.t_final = 0.0;
  const Trajectory traj = run(sc);
  const nlohmann::json good = summary_json(compute_metrics(traj), traj, sc);
  nlohmann::json tampered = good;
  tampered["schema_version"] = kSummarySchemaVersion + 1;
  REQUIRE_THROWS_AS(compare_summaries(good, tampered), ValidationError);
  nlohmann::json missing = good;
  missing.erase("schema_version");
  REQUIRE_THROWS_AS(compare_summaries(missing, good), ValidationError);
}

TEST_CASE("missing files raise IoError") {
  REQUIRE_THROWS_AS(load_scenario("/nonexistent/path/scenario.cfg"), IoError);
  REQUIRE_THROWS_AS(load_summary("/nonexistent/path/summary.json"), IoError);
  ScenarioConfig sc = preset_scenario_a();
  sc.sim.t_final = 0.0;
  const Trajectory traj = run(sc);
  REQUIRE_THROWS_AS(emit_csv(traj, "/nonexistent/dir/out.csv"), IoError);
}
