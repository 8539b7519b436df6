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

#ifndef AUSMAMC_SCENARIO_HPP
#define AUSMAMC_SCENARIO_HPP

#include <cmath>
#include <string>
#include <vector>

#include "ausmamc/controller.hpp"
#include "ausmamc/sim_options.hpp"

namespace ausmamc {

struct ControllerConfig {
  ControllerType type = ControllerType::ausmamc;
  SwitchingMode switching = SwitchingMode::smoothed;
  AusmamcParams params;
};

/**
 * Complete description of one maneuver run: plant, boundary conditions,
 * disturbance, controller selection, and integration settings.
 *
 * Configured quaternions are used exactly as given. Published initial/desired
 * attitudes are often rounded to a few decimals (norm off by ~1e-5); scaling
 * them would shift the initial rotation angle, so validation warns about
 * off-unit inputs instead of silently repairing them, and rejects anything
 * further than 1e-3 from unit norm.
 */
struct ScenarioConfig {
  std::string name = "custom";
  Mat3 inertia = Mat3::Identity();   // kg*m^2
  Quaternion q_initial;              // attitude of body w.r.t. inertial frame
  Vec3 omega_initial = Vec3::Zero(); // rad/s
  Quaternion q_desired;
  Vec3 omega_desired = Vec3::Zero(); // must be zero (rest-to-rest)
  DisturbanceModel disturbance;
  ControllerConfig controller;
  SimOptions sim;
};

/// Rest-to-rest maneuver with a 55.9 degree rotation budget: the initial
/// error scalar is positive, so the near equilibrium is q_e0 = +1.
inline ScenarioConfig preset_scenario_a() {
  ScenarioConfig sc;
  sc.name = "A";
  sc.inertia << 20.0, 0.0, 0.9,
                0.0, 17.0, 0.0,
                0.9, 0.0, 15.0;
  sc.q_initial = Quaternion::identity();
  sc.q_desired = Quaternion(0.8832, 0.3, -0.2, -0.3);
  return sc;
}

/// Rest-to-rest maneuver whose error starts at q_e0 < 0 (259.6 degrees from
/// q_e0 = +1 but only 100.4 degrees from q_e0 = -1): the unwinding stress
/// case.
inline ScenarioConfig preset_scenario_b() {
  ScenarioConfig sc = preset_scenario_a();
  sc.name = "B";
  sc.q_desired = Quaternion(-0.6403, -0.5, -0.3, 0.5);
  return sc;
}

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

inline ValidationReport validate_scenario(const ScenarioConfig& sc) {
  ValidationReport report;
  auto check_quaternion = [&report](const Quaternion& q, const std::string& field) {
    if (!q.allFinite()) {
      report.errors.push_back(field + " has non-finite components");
      return;
    }
    const double dev = std::abs(q.norm() - 1.0);
    if (dev > 1e-3) {
      report.errors.push_back(field + " is not a unit quaternion (| ||q|| - 1 | = " +
                              std::to_string(dev) + ", limit 1e-3)");
    } else if (dev > 1e-9) {
      report.warnings.push_back(field + " is off unit norm by " + std::to_string(dev) +
                                "; used exactly as configured");
    }
  };
  check_quaternion(sc.q_initial, "scenario.q_initial");
  check_quaternion(sc.q_desired, "scenario.q_desired");

  if (!sc.omega_initial.allFinite()) {
    report.errors.push_back("scenario.omega_initial has non-finite components");
  } else if (!sc.omega_initial.isZero(0.0)) {
    report.warnings.push_back(
        "scenario.omega_initial is nonzero; the anti-unwinding guarantee is "
        "only established for rest-to-rest maneuvers");
  }
  if (!sc.omega_desired.isZero(0.0)) {
    report.errors.push_back(
        "scenario.omega_desired must be zero (rest-to-rest maneuver)");
  }

  if (!sc.inertia.allFinite()) {
    report.errors.push_back("scenario.J has non-finite entries");
  } else {
    try {
      InertiaMatrix probe(sc.inertia);
      (void)probe;
    } catch (const ValidationError& e) {
      for (const auto& v : e.violations()) report.errors.push_back("scenario.J: " + v);
      if (e.violations().empty()) report.errors.push_back(std::string("scenario.J: ") + e.what());
    }
  }

  if (!(sc.disturbance.frequency >= 0.0) || !sc.disturbance.amplitude.allFinite()) {
    report.errors.push_back("disturbance model must be finite with frequency >= 0");
  }
  for (auto& v : sc.controller.params.violations(sc.disturbance.d_max())) {
    report.errors.push_back(v);
  }

  if (!(sc.sim.dt > 0.0)) report.errors.push_back("sim.dt must be > 0");
  if (!(sc.sim.t_final >= 0.0)) report.errors.push_back("sim.t_final must be >= 0");
  if (sc.sim.record_every < 1) report.errors.push_back("sim.record_every must be >= 1");
  return report;
}

/// Throws ValidationError carrying every violated invariant at once.
inline void ensure_valid(const ScenarioConfig& sc) {
  ValidationReport report = validate_scenario(sc);
  if (!report.ok()) {
    throw ValidationError(std::move(report.errors));
  }
}

}  // namespace ausmamc

#endif  // AUSMAMC_SCENARIO_HPP
