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

#ifndef AUSMAMC_ANALYSIS_HPP
#define AUSMAMC_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "ausmamc/sim.hpp"

namespace ausmamc {

/// Default monotonicity tolerance for rotation-angle bookkeeping: boundary
/// layer ripple produces sub-degree wiggle that says nothing about the gross
/// direction of travel.
inline constexpr double kThetaTolRad = 1.0 * std::numbers::pi / 180.0;

struct RunMetrics {
  double theta_initial = 0.0;       // rad
  double theta_travel = 0.0;        // rad, total variation of theta
  bool unwinding_detected = false;
  double monotone_violation = 0.0;  // rad, largest counter-direction excursion
  std::optional<double> settling_time;      // s
  std::optional<double> surface_reach_time; // s
  double steady_state_qev = 0.0;    // max ||q_ev|| over the trailing window
  double steady_state_omega = 0.0;  // max ||omega_e|| over the trailing window, rad/s
  Vec3 max_torque_per_axis = Vec3::Zero();  // N*m
  double torque_integral = 0.0;     // N*m*s, integral of ||u||
};

namespace detail {

/// theta with the bands within `tol` of the endpoints collapsed onto them,
/// so that arccos noise folding at 0 and 2pi cannot accumulate into travel.
inline std::vector<double> snapped_theta(const Trajectory& traj, double tol) {
  std::vector<double> theta;
  theta.reserve(traj.samples.size());
  const double two_pi = 2.0 * std::numbers::pi;
  for (const auto& s : traj.samples) {
    double th = s.theta;
    if (th <= tol) th = 0.0;
    if (th >= two_pi - tol) th = two_pi;
    theta.push_back(th);
  }
  return theta;
}

}  // namespace detail

/**
 * Rotation-angle bookkeeping for one trajectory.
 *
 * The dichotomy under test: theta(0) in (0, pi] must run down to 0 and
 * theta(0) in (pi, 2pi) must run up to 2pi. `monotone_violation` is the
 * largest excursion against that direction (running-extremum based), and
 * unwinding is declared when theta crosses pi away from its near equilibrium
 * by more than `tol_theta`.
 */
inline RunMetrics detect_unwinding(const Trajectory& traj,
                                   double tol_theta = kThetaTolRad) {
  RunMetrics m;
  if (traj.samples.empty()) {
    return m;
  }
  const double pi = std::numbers::pi;
  const std::vector<double> theta = detail::snapped_theta(traj, tol_theta);
  m.theta_initial = traj.samples.front().theta;

  double travel = 0.0;
  for (size_t i = 1; i < theta.size(); ++i) {
    travel += std::abs(theta[i] - theta[i - 1]);
  }
  m.theta_travel = travel;

  const bool decreasing = m.theta_initial <= pi;
  double extremum = theta.front();
  double violation = 0.0;
  double lowest = theta.front();
  double highest = theta.front();
  for (double th : theta) {
    lowest = std::min(lowest, th);
    highest = std::max(highest, th);
    if (decreasing) {
      extremum = std::min(extremum, th);
      violation = std::max(violation, th - extremum);
    } else {
      extremum = std::max(extremum, th);
      violation = std::max(violation, extremum - th);
    }
  }
  m.monotone_violation = violation;
  m.unwinding_detected = decreasing ? highest >= pi + tol_theta
                                    : lowest <= pi - tol_theta;
  return m;
}

/// Full post-run metrics; theta bookkeeping from detect_unwinding plus event
/// times, trailing-window steady-state errors, and torque statistics.
inline RunMetrics compute_metrics(const Trajectory& traj,
                                  double tol_theta = kThetaTolRad) {
  RunMetrics m = detect_unwinding(traj, tol_theta);
  if (traj.samples.empty()) {
    return m;
  }
  if (auto it = traj.events.find("equilibrium_reach"); it != traj.events.end()) {
    m.settling_time = it->second;
  }
  if (auto it = traj.events.find("surface_reach"); it != traj.events.end()) {
    m.surface_reach_time = it->second;
  }

  const double t_end = traj.samples.back().t;
  const double window_start = t_end - kEquilibriumHold;
  double prev_t = traj.samples.front().t;
  double prev_u = traj.samples.front().u.norm();
  for (const auto& s : traj.samples) {
    if (s.t >= window_start) {
      m.steady_state_qev = std::max(m.steady_state_qev, s.q_e.qv.norm());
      m.steady_state_omega = std::max(m.steady_state_omega, s.omega_e.norm());
    }
    m.max_torque_per_axis = m.max_torque_per_axis.cwiseMax(s.u.cwiseAbs());
    if (s.t > prev_t) {
      m.torque_integral += 0.5 * (prev_u + s.u.norm()) * (s.t - prev_t);
    }
    prev_t = s.t;
    prev_u = s.u.norm();
  }
  return m;
}

struct ReachingViolation {
  double t = 0.0;        // time of the later sample
  double v2_before = 0.0;
  double v2_after = 0.0;
};

/// Checks the reaching law V2 non-increasing between consecutive samples
/// wherever both endpoints satisfy ||s||_inf >= epsilon (outside the layer,
/// where the switching term is at full authority). Empty result = pass.
inline std::vector<ReachingViolation> reaching_law_check(const Trajectory& traj,
                                                         double epsilon,
                                                         double tol = 1e-8) {
  std::vector<ReachingViolation> violations;
  for (size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const auto& a = traj.samples[i];
    const auto& b = traj.samples[i + 1];
    if (a.s.cwiseAbs().maxCoeff() < epsilon || b.s.cwiseAbs().maxCoeff() < epsilon) {
      continue;
    }
    if (b.v2 > a.v2 + tol) {
      violations.push_back({b.t, a.v2, b.v2});
    }
  }
  return violations;
}

enum class Equilibrium { none, zero, two_pi };

struct SlidingVerdict {
  double theta0 = 0.0;              // rad
  bool decreasing_branch = false;   // theta(0) <= pi
  bool monotone = false;            // excursion against the branch <= tol
  double max_counter_excursion = 0.0;  // rad
  double max_v1_increase = 0.0;     // worst per-step V1 increase
  double final_theta = 0.0;         // rad
  Equilibrium equilibrium = Equilibrium::none;
};

struct SlidingOptions {
  double dt = 1e-3;
  double t_final = 20.0;
  Vec3 axis = Vec3(1.0, 1.0, 1.0).normalized();
  double tol_theta = 0.1 * std::numbers::pi / 180.0;
};

/**
 * Ideal-sliding verification of the surface itself: integrates the reduced
 * kinematics with omega_e = -lambda sigma(q_e) for each initial rotation
 * angle and reports whether theta moved monotonically to the near
 * equilibrium with V1 non-increasing.
 */
inline std::vector<SlidingVerdict> sliding_phase_check(
    const std::vector<double>& theta0_grid, const AusmamcParams& p,
    const SlidingOptions& opts = {}) {
  const double pi = std::numbers::pi;
  std::vector<SlidingVerdict> verdicts;
  verdicts.reserve(theta0_grid.size());

  auto q_dot = [&p](const Quaternion& q_e) {
    const Vec3 w = -p.lambda * sigma(q_e);
    Vec4 dq;
    dq[0] = -0.5 * q_e.qv.dot(w);
    dq.tail<3>() = 0.5 * (q_e.q0 * w + q_e.qv.cross(w));
    return dq;
  };

  for (double theta0 : theta0_grid) {
    SlidingVerdict v;
    v.theta0 = theta0;
    v.decreasing_branch = theta0 <= pi;
    Quaternion q_e(std::cos(theta0 / 2.0), opts.axis * std::sin(theta0 / 2.0));

    const long steps = std::lround(opts.t_final / opts.dt);
    double extremum = rotation_angle(q_e);
    double v1_prev = lyapunov_v1(q_e);
    for (long k = 0; k < steps; ++k) {
      const Vec4 k1 = q_dot(q_e);
      auto at = [&q_e](const Vec4& d, double h) {
        return Quaternion(q_e.q0 + h * d[0], q_e.qv + h * d.tail<3>());
      };
      const Vec4 k2 = q_dot(at(k1, 0.5 * opts.dt));
      const Vec4 k3 = q_dot(at(k2, 0.5 * opts.dt));
      const Vec4 k4 = q_dot(at(k3, opts.dt));
      const Vec4 delta = opts.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      q_e = Quaternion(q_e.q0 + delta[0], q_e.qv + delta.tail<3>()).normalized();

      const double th = rotation_angle(q_e);
      if (v.decreasing_branch) {
        extremum = std::min(extremum, th);
        v.max_counter_excursion = std::max(v.max_counter_excursion, th - extremum);
      } else {
        extremum = std::max(extremum, th);
        v.max_counter_excursion = std::max(v.max_counter_excursion, extremum - th);
      }
      const double v1 = lyapunov_v1(q_e);
      v.max_v1_increase = std::max(v.max_v1_increase, v1 - v1_prev);
      v1_prev = v1;
    }

    v.final_theta = rotation_angle(q_e);
    v.monotone = v.max_counter_excursion <= opts.tol_theta;
    if (v.final_theta <= opts.tol_theta) {
      v.equilibrium = Equilibrium::zero;
    } else if (v.final_theta >= 2.0 * pi - opts.tol_theta) {
      v.equilibrium = Equilibrium::two_pi;
    }
    verdicts.push_back(v);
  }
  return verdicts;
}

}  // namespace ausmamc

#endif  // AUSMAMC_ANALYSIS_HPP
