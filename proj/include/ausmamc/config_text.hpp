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

#ifndef AUSMAMC_CONFIG_TEXT_HPP
#define AUSMAMC_CONFIG_TEXT_HPP

#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ausmamc/scenario.hpp"

namespace ausmamc {

namespace detail {

/// Shortest 17-significant-digit decimal form; round-trips any double.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace detail

inline const char* controller_type_name(ControllerType t) {
  return t == ControllerType::baseline ? "baseline" : "ausmamc";
}

inline const char* switching_mode_name(SwitchingMode m) {
  return m == SwitchingMode::exact_sign ? "exact_sign" : "smooth";
}

inline const char* disturbance_pattern_name(DisturbancePattern p) {
  return p == DisturbancePattern::none ? "none" : "sin_sin_ncos";
}

/**
 * Flat dotted-key scenario format: one `key = value` per line, `#` comments,
 * numeric arrays in brackets. Chosen over positional formats so diffs stay
 * readable and messages can name the offending key. Unlisted keys fall back
 * to the defaults of ScenarioConfig; see scenario_to_text for every key.
 */
inline ScenarioConfig parse_scenario_text(const std::string& text,
                                          const std::string& origin = "<config>") {
  struct Entry {
    int line = 0;
    std::string raw;
  };
  std::map<std::string, Entry> entries;

  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    const std::string stripped = detail::trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = detail::trim(stripped.substr(0, eq));
    const std::string value = detail::trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": empty key or value");
    }
    if (!entries.emplace(key, Entry{line_no, value}).second) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                       key + "'");
    }
  }

  auto where = [&origin](const Entry& e) {
    return origin + ":" + std::to_string(e.line);
  };
  auto parse_number = [&](const std::string& key, const Entry& e, const std::string& token) {
    double out = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
      throw ParseError(where(e) + ": key '" + key + "' expects a number, got '" +
                       token + "'");
    }
    return out;
  };
  auto parse_array = [&](const std::string& key, const Entry& e, int n) {
    const std::string& raw = e.raw;
    if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']') {
      throw ParseError(where(e) + ": key '" + key + "' expects an array like [a, b, c]");
    }
    std::vector<double> values;
    std::string token;
    std::istringstream inner(raw.substr(1, raw.size() - 2));
    while (std::getline(inner, token, ',')) {
      values.push_back(parse_number(key, e, detail::trim(token)));
    }
    if (static_cast<int>(values.size()) != n) {
      throw ParseError(where(e) + ": key '" + key + "' expects " + std::to_string(n) +
                       " entries, got " + std::to_string(values.size()));
    }
    return values;
  };

  ScenarioConfig sc;
  sc.name = "custom";
  bool have_J[3] = {false, false, false};
  bool have_q_desired = false;

  auto take = [&entries](const std::string& key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto consume = [&entries](const std::string& key) { entries.erase(key); };

  if (const Entry* e = take("scenario.name")) {
    sc.name = e->raw;
    consume("scenario.name");
  }
  for (int r = 0; r < 3; ++r) {
    const std::string key = "scenario.J.row" + std::to_string(r);
    if (const Entry* e = take(key)) {
      const auto row = parse_array(key, *e, 3);
      sc.inertia.row(r) << row[0], row[1], row[2];
      have_J[r] = true;
      consume(key);
    }
  }
  auto read_quaternion = [&](const std::string& key, Quaternion& q, bool* present) {
    if (const Entry* e = take(key)) {
      const auto v = parse_array(key, *e, 4);
      q = Quaternion(v[0], v[1], v[2], v[3]);
      if (present) *present = true;
      consume(key);
    }
  };
  auto read_vec3 = [&](const std::string& key, Vec3& v3) {
    if (const Entry* e = take(key)) {
      const auto v = parse_array(key, *e, 3);
      v3 = Vec3(v[0], v[1], v[2]);
      consume(key);
    }
  };
  auto read_number = [&](const std::string& key, double& x) {
    if (const Entry* e = take(key)) {
      x = parse_number(key, *e, e->raw);
      consume(key);
    }
  };
  auto read_bool = [&](const std::string& key, bool& b) {
    if (const Entry* e = take(key)) {
      if (e->raw == "true") {
        b = true;
      } else if (e->raw == "false") {
        b = false;
      } else {
        throw ParseError(where(*e) + ": key '" + key + "' expects true or false, got '" +
                         e->raw + "'");
      }
      consume(key);
    }
  };

  read_quaternion("scenario.q_initial", sc.q_initial, nullptr);
  read_vec3("scenario.omega_initial", sc.omega_initial);
  read_quaternion("scenario.q_desired", sc.q_desired, &have_q_desired);
  read_vec3("scenario.omega_desired", sc.omega_desired);
  read_vec3("disturbance.amplitude", sc.disturbance.amplitude);
  read_number("disturbance.frequency", sc.disturbance.frequency);
  if (const Entry* e = take("disturbance.pattern")) {
    if (e->raw == "none") {
      sc.disturbance.pattern = DisturbancePattern::none;
    } else if (e->raw == "sin_sin_ncos") {
      sc.disturbance.pattern = DisturbancePattern::sin_sin_ncos;
    } else {
      throw ParseError(where(*e) + ": disturbance.pattern must be sin_sin_ncos or none");
    }
    consume("disturbance.pattern");
  }
  if (const Entry* e = take("controller.type")) {
    if (e->raw == "ausmamc") {
      sc.controller.type = ControllerType::ausmamc;
    } else if (e->raw == "baseline") {
      sc.controller.type = ControllerType::baseline;
    } else {
      throw ParseError(where(*e) + ": controller.type must be ausmamc or baseline");
    }
    consume("controller.type");
  }
  if (const Entry* e = take("controller.switching")) {
    if (e->raw == "smooth") {
      sc.controller.switching = SwitchingMode::smoothed;
    } else if (e->raw == "exact_sign") {
      sc.controller.switching = SwitchingMode::exact_sign;
    } else {
      throw ParseError(where(*e) + ": controller.switching must be smooth or exact_sign");
    }
    consume("controller.switching");
  }
  read_number("controller.lambda", sc.controller.params.lambda);
  read_number("controller.gamma1", sc.controller.params.gamma1);
  read_number("controller.epsilon", sc.controller.params.epsilon);
  read_number("controller.qev_floor", sc.controller.params.qev_floor);
  read_number("controller.sgn_zero_tol", sc.controller.params.sgn_zero_tol);
  read_number("sim.dt", sc.sim.dt);
  read_number("sim.t_final", sc.sim.t_final);
  if (const Entry* e = take("sim.record_every")) {
    const double x = parse_number("sim.record_every", *e, e->raw);
    sc.sim.record_every = static_cast<int>(x);
    if (static_cast<double>(sc.sim.record_every) != x) {
      throw ParseError(where(*e) + ": sim.record_every expects an integer");
    }
    consume("sim.record_every");
  }
  read_bool("sim.controller_hold", sc.sim.controller_hold);
  read_bool("sim.renormalize", sc.sim.renormalize);

  if (!entries.empty()) {
    std::string msg = origin + ": unknown key(s):";
    for (const auto& [key, entry] : entries) {
      msg += " '" + key + "' (line " + std::to_string(entry.line) + ")";
    }
    throw ParseError(msg);
  }

  std::vector<std::string> missing;
  if (!(have_J[0] && have_J[1] && have_J[2])) {
    missing.push_back("scenario.J.row0/row1/row2");
  }
  if (!have_q_desired) {
    missing.push_back("scenario.q_desired");
  }
  if (!missing.empty()) {
    std::string msg = origin + ": missing required key(s):";
    for (const auto& k : missing) msg += " " + k;
    throw ParseError(msg);
  }

  ValidationReport report = validate_scenario(sc);
  if (!report.ok()) {
    throw ValidationError(std::move(report.errors));
  }
  return sc;
}

/// Inverse of parse_scenario_text; emits every key with 17-digit numbers so a
/// load of the result reproduces the config field-exactly.
inline std::string scenario_to_text(const ScenarioConfig& sc) {
  using detail::format_g17;
  auto array3 = [](const Vec3& v) {
    return "[" + detail::format_g17(v.x()) + ", " + detail::format_g17(v.y()) + ", " +
           detail::format_g17(v.z()) + "]";
  };
  auto array4 = [](const Quaternion& q) {
    return "[" + detail::format_g17(q.q0) + ", " + detail::format_g17(q.qv.x()) + ", " +
           detail::format_g17(q.qv.y()) + ", " + detail::format_g17(q.qv.z()) + "]";
  };
  std::string out;
  out += "# ausmamc scenario\n";
  out += "scenario.name = " + sc.name + "\n";
  for (int r = 0; r < 3; ++r) {
    out += "scenario.J.row" + std::to_string(r) + " = " +
           array3(sc.inertia.row(r).transpose()) + "\n";
  }
  out += "scenario.q_initial = " + array4(sc.q_initial) + "\n";
  out += "scenario.omega_initial = " + array3(sc.omega_initial) + "\n";
  out += "scenario.q_desired = " + array4(sc.q_desired) + "\n";
  out += "scenario.omega_desired = " + array3(sc.omega_desired) + "\n";
  out += "disturbance.amplitude = " + array3(sc.disturbance.amplitude) + "\n";
  out += "disturbance.frequency = " + format_g17(sc.disturbance.frequency) + "\n";
  out += std::string("disturbance.pattern = ") +
         disturbance_pattern_name(sc.disturbance.pattern) + "\n";
  out += std::string("controller.type = ") + controller_type_name(sc.controller.type) + "\n";
  out += std::string("controller.switching = ") +
         switching_mode_name(sc.controller.switching) + "\n";
  out += "controller.lambda = " + format_g17(sc.controller.params.lambda) + "\n";
  out += "controller.gamma1 = " + format_g17(sc.controller.params.gamma1) + "\n";
  out += "controller.epsilon = " + format_g17(sc.controller.params.epsilon) + "\n";
  out += "controller.qev_floor = " + format_g17(sc.controller.params.qev_floor) + "\n";
  out += "controller.sgn_zero_tol = " + format_g17(sc.controller.params.sgn_zero_tol) + "\n";
  out += "sim.dt = " + format_g17(sc.sim.dt) + "\n";
  out += "sim.t_final = " + format_g17(sc.sim.t_final) + "\n";
  out += "sim.record_every = " + std::to_string(sc.sim.record_every) + "\n";
  out += std::string("sim.controller_hold = ") + (sc.sim.controller_hold ? "true" : "false") + "\n";
  out += std::string("sim.renormalize = ") + (sc.sim.renormalize ? "true" : "false") + "\n";
  return out;
}

}  // namespace ausmamc

#endif  // AUSMAMC_CONFIG_TEXT_HPP
