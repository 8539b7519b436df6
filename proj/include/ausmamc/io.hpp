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

#ifndef AUSMAMC_IO_HPP
#define AUSMAMC_IO_HPP

#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ausmamc/analysis.hpp"
#include "ausmamc/config_text.hpp"

namespace ausmamc {

inline constexpr int kSummarySchemaVersion = 1;

inline constexpr const char* kCsvHeader =
    "t,qe0,qe1,qe2,qe3,we1,we2,we3,u1,u2,u3,s1,s2,s3,theta_deg,roll_deg,"
    "pitch_deg,yaw_deg,V1,V2,g,gdot,gamma2,d1,d2,d3";

namespace detail {

inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

inline void append_csv_value(std::string& line, double x, bool first = false) {
  if (!first) line += ',';
  line += format_g17(x);
}

}  // namespace detail

/// CSV rendering of a trajectory: fixed column order, 17-significant-digit
/// numbers (bit round-trip), LF newlines. Angles are external in degrees;
/// roll/pitch/yaw are the intrinsic 3-2-1 angles of the body attitude q.
inline std::string csv_text(const Trajectory& traj) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& s : traj.samples) {
    std::string line;
    line.reserve(26 * 20);
    const EulerAngles euler = euler_angles(s.q);
    detail::append_csv_value(line, s.t, true);
    detail::append_csv_value(line, s.q_e.q0);
    detail::append_csv_value(line, s.q_e.qv.x());
    detail::append_csv_value(line, s.q_e.qv.y());
    detail::append_csv_value(line, s.q_e.qv.z());
    for (int i = 0; i < 3; ++i) detail::append_csv_value(line, s.omega_e[i]);
    for (int i = 0; i < 3; ++i) detail::append_csv_value(line, s.u[i]);
    for (int i = 0; i < 3; ++i) detail::append_csv_value(line, s.s[i]);
    detail::append_csv_value(line, s.theta * detail::kRadToDeg);
    detail::append_csv_value(line, euler.roll * detail::kRadToDeg);
    detail::append_csv_value(line, euler.pitch * detail::kRadToDeg);
    detail::append_csv_value(line, euler.yaw * detail::kRadToDeg);
    detail::append_csv_value(line, s.v1);
    detail::append_csv_value(line, s.v2);
    detail::append_csv_value(line, s.g);
    detail::append_csv_value(line, s.g_dot);
    detail::append_csv_value(line, s.gamma2);
    for (int i = 0; i < 3; ++i) detail::append_csv_value(line, s.d[i]);
    out += line;
    out += '\n';
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  file << content;
  if (!file) {
    throw IoError("write to '" + path + "' failed");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (!file && !file.eof()) {
    throw IoError("read from '" + path + "' failed");
  }
  return buffer.str();
}

inline void emit_csv(const Trajectory& traj, const std::string& path) {
  if (traj.samples.empty()) {
    throw ValidationError("emit_csv: empty trajectory");
  }
  write_file(path, csv_text(traj));
}

/// Preset name ("A"/"B", case-insensitive) or a config-file path.
inline ScenarioConfig load_scenario(const std::string& preset_or_path) {
  if (preset_or_path == "A" || preset_or_path == "a") {
    return preset_scenario_a();
  }
  if (preset_or_path == "B" || preset_or_path == "b") {
    return preset_scenario_b();
  }
  ScenarioConfig sc = parse_scenario_text(read_file(preset_or_path), preset_or_path);
  return sc;
}

inline void save_scenario(const ScenarioConfig& sc, const std::string& path) {
  write_file(path, scenario_to_text(sc));
}

inline nlohmann::json scenario_json(const ScenarioConfig& sc) {
  nlohmann::json j;
  j["name"] = sc.name;
  j["J"] = {
      {sc.inertia(0, 0), sc.inertia(0, 1), sc.inertia(0, 2)},
      {sc.inertia(1, 0), sc.inertia(1, 1), sc.inertia(1, 2)},
      {sc.inertia(2, 0), sc.inertia(2, 1), sc.inertia(2, 2)},
  };
  j["q_initial"] = {sc.q_initial.q0, sc.q_initial.qv.x(), sc.q_initial.qv.y(),
                    sc.q_initial.qv.z()};
  j["omega_initial"] = {sc.omega_initial.x(), sc.omega_initial.y(), sc.omega_initial.z()};
  j["q_desired"] = {sc.q_desired.q0, sc.q_desired.qv.x(), sc.q_desired.qv.y(),
                    sc.q_desired.qv.z()};
  j["omega_desired"] = {sc.omega_desired.x(), sc.omega_desired.y(), sc.omega_desired.z()};
  j["disturbance"] = {
      {"amplitude",
       {sc.disturbance.amplitude.x(), sc.disturbance.amplitude.y(),
        sc.disturbance.amplitude.z()}},
      {"frequency_rad_s", sc.disturbance.frequency},
      {"pattern", disturbance_pattern_name(sc.disturbance.pattern)},
      {"d_max", sc.disturbance.d_max()},
  };
  j["controller"] = {
      {"type", controller_type_name(sc.controller.type)},
      {"switching", switching_mode_name(sc.controller.switching)},
      {"lambda", sc.controller.params.lambda},
      {"gamma1", sc.controller.params.gamma1},
      {"epsilon", sc.controller.params.epsilon},
      {"qev_floor", sc.controller.params.qev_floor},
      {"sgn_zero_tol", sc.controller.params.sgn_zero_tol},
  };
  j["sim"] = {
      {"dt", sc.sim.dt},
      {"t_final", sc.sim.t_final},
      {"record_every", sc.sim.record_every},
      {"controller_hold", sc.sim.controller_hold},
      {"renormalize", sc.sim.renormalize},
  };
  return j;
}

/// Structured run summary: metrics, event times, config echo, and the
/// provenance of every threshold the metrics depend on.
inline nlohmann::json summary_json(const RunMetrics& metrics, const Trajectory& traj,
                                   const ScenarioConfig& sc) {
  nlohmann::json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["tool"] = "ausmamc";
  j["scenario"] = scenario_json(sc);

  nlohmann::json events;
  events["surface_reach"] = nullptr;
  events["equilibrium_reach"] = nullptr;
  for (const auto& [name, t] : traj.events) {
    events[name] = t;
  }
  j["events"] = events;

  nlohmann::json m;
  m["theta_initial_deg"] = metrics.theta_initial * detail::kRadToDeg;
  m["theta_travel_deg"] = metrics.theta_travel * detail::kRadToDeg;
  m["unwinding_detected"] = metrics.unwinding_detected;
  m["monotone_violation_deg"] = metrics.monotone_violation * detail::kRadToDeg;
  if (metrics.settling_time) {
    m["settling_time_s"] = *metrics.settling_time;
  } else {
    m["settling_time_s"] = nullptr;
  }
  if (metrics.surface_reach_time) {
    m["surface_reach_time_s"] = *metrics.surface_reach_time;
  } else {
    m["surface_reach_time_s"] = nullptr;
  }
  m["steady_state_qev"] = metrics.steady_state_qev;
  m["steady_state_omega_rad_s"] = metrics.steady_state_omega;
  m["max_torque_per_axis_Nm"] = {metrics.max_torque_per_axis.x(),
                                 metrics.max_torque_per_axis.y(),
                                 metrics.max_torque_per_axis.z()};
  m["torque_integral_Nms"] = metrics.torque_integral;
  j["metrics"] = m;

  j["thresholds"] = {
      {"surface_reach_norm", kSurfaceReachNorm},
      {"equilibrium_qev", kEquilibriumQev},
      {"equilibrium_omega_rad_s", kEquilibriumOmega},
      {"equilibrium_hold_s", kEquilibriumHold},
      {"theta_tolerance_deg", kThetaTolRad * detail::kRadToDeg},
      {"note",
       "event and settling thresholds are implementation-defined; angles are "
       "reported in degrees, quaternions scalar-first"},
  };
  return j;
}

inline void emit_summary(const RunMetrics& metrics, const Trajectory& traj,
                         const ScenarioConfig& sc, const std::string& path) {
  write_file(path, summary_json(metrics, traj, sc).dump(2) + "\n");
}

inline nlohmann::json load_summary(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("summary '" + path + "' is not valid JSON: " + e.what());
  }
}

struct ComparisonReport {
  struct Row {
    std::string metric;
    std::string a;
    std::string b;
    std::string delta;
  };
  std::vector<Row> rows;

  std::string to_string() const {
    size_t w0 = 8, w1 = 5, w2 = 5;
    for (const auto& r : rows) {
      w0 = std::max(w0, r.metric.size());
      w1 = std::max(w1, r.a.size());
      w2 = std::max(w2, r.b.size());
    }
    auto pad = [](const std::string& s, size_t w) {
      return s + std::string(w - s.size() + 2, ' ');
    };
    std::string out = pad("metric", w0) + pad("run_a", w1) + pad("run_b", w2) + "delta\n";
    for (const auto& r : rows) {
      out += pad(r.metric, w0) + pad(r.a, w1) + pad(r.b, w2) + r.delta + "\n";
    }
    return out;
  }
};

/// Side-by-side comparison of two run summaries (settling, travel, torque,
/// unwinding). Throws on schema mismatch.
inline ComparisonReport compare_summaries(const nlohmann::json& a,
                                          const nlohmann::json& b) {
  auto version = [](const nlohmann::json& j) -> int {
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
      return -1;
    }
    return j["schema_version"].get<int>();
  };
  const int va = version(a), vb = version(b);
  if (va != kSummarySchemaVersion || vb != kSummarySchemaVersion) {
    throw ValidationError("summary schema mismatch: got versions " +
                          std::to_string(va) + " and " + std::to_string(vb) +
                          ", expected " + std::to_string(kSummarySchemaVersion));
  }

  auto fmt = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return std::string(buf);
  };
  ComparisonReport report;
  auto numeric_row = [&](const std::string& label, const char* key) {
    const auto& ma = a.at("metrics").at(key);
    const auto& mb = b.at("metrics").at(key);
    ComparisonReport::Row row;
    row.metric = label;
    row.a = ma.is_null() ? "null" : fmt(ma.get<double>());
    row.b = mb.is_null() ? "null" : fmt(mb.get<double>());
    row.delta = (ma.is_null() || mb.is_null())
                    ? "n/a"
                    : fmt(mb.get<double>() - ma.get<double>());
    report.rows.push_back(row);
  };
  numeric_row("settling_time_s", "settling_time_s");
  numeric_row("theta_travel_deg", "theta_travel_deg");

  auto max_torque = [](const nlohmann::json& j) {
    double worst = 0.0;
    for (const auto& x : j.at("metrics").at("max_torque_per_axis_Nm")) {
      worst = std::max(worst, std::abs(x.get<double>()));
    }
    return worst;
  };
  {
    ComparisonReport::Row row;
    row.metric = "max_torque_Nm";
    const double ta = max_torque(a), tb = max_torque(b);
    row.a = fmt(ta);
    row.b = fmt(tb);
    row.delta = fmt(tb - ta);
    report.rows.push_back(row);
  }
  numeric_row("torque_integral_Nms", "torque_integral_Nms");
  {
    ComparisonReport::Row row;
    row.metric = "unwinding_detected";
    const bool ua = a.at("metrics").at("unwinding_detected").get<bool>();
    const bool ub = b.at("metrics").at("unwinding_detected").get<bool>();
    row.a = ua ? "true" : "false";
    row.b = ub ? "true" : "false";
    row.delta = ua == ub ? "match" : "differ";
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace ausmamc

#endif  // AUSMAMC_IO_HPP
