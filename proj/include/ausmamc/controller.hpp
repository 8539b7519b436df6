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

#ifndef AUSMAMC_CONTROLLER_HPP
#define AUSMAMC_CONTROLLER_HPP

#include <cmath>

#include "ausmamc/plant.hpp"

namespace ausmamc {

/**
 * Tuning for the anti-unwinding sliding-mode controller.
 *
 * lambda scales the sliding-surface kinematics, gamma1 dominates the
 * disturbance bound, epsilon is the boundary-layer width of the smoothed
 * switching term, qev_floor guards the 0/0 form in g_dot near the equilibria,
 * and sgn_zero_tol is the ||s|| band treated as "on the surface" by the
 * exact-sign switching mode.
 */
struct AusmamcParams {
  double lambda = 2.0;        // > 0, dimensionless
  double gamma1 = 10.0;       // >= ||d||_max, N*m
  double epsilon = 0.5;       // > 0, boundary-layer width
  double qev_floor = 1e-6;    // in (0, 1e-2]
  // Exact-sign mode treats ||s|| <= sgn_zero_tol as on-surface. Integrator
  // stage states sit O(dt^2) off an invariant surface, so the band must
  // cover those excursions (~1e-7 at dt = 1e-3) or the sign term chatters
  // on trajectories that start exactly on s = 0.
  double sgn_zero_tol = 1e-6;

  /// Collects violated parameter constraints; empty means valid.
  std::vector<std::string> violations(double d_max) const {
    std::vector<std::string> v;
    if (!(lambda > 0.0)) v.push_back("controller.lambda must be > 0");
    if (!(gamma1 >= d_max)) {
      v.push_back("controller.gamma1 must be >= the disturbance bound ||d||_max = " +
                  std::to_string(d_max));
    }
    if (!(epsilon > 0.0)) v.push_back("controller.epsilon must be > 0");
    if (!(qev_floor > 0.0 && qev_floor <= 1e-2)) {
      v.push_back("controller.qev_floor must lie in (0, 1e-2]");
    }
    if (!(sgn_zero_tol >= 0.0)) v.push_back("controller.sgn_zero_tol must be >= 0");
    return v;
  }
};

enum class SwitchingMode {
  smoothed,    // arctan boundary layer, chattering-free
  exact_sign,  // discontinuous sgn with a zero band; for reaching-law studies
};

enum class ControllerType {
  ausmamc,   // two-equilibrium anti-unwinding law
  baseline,  // single-equilibrium law that exhibits unwinding
};

/// Full controller evaluation at one state. u == u_eq + u_n exactly; the
/// remaining fields are diagnostics recorded along trajectories.
struct ControlOutput {
  Vec3 u = Vec3::Zero();      // commanded torque, N*m
  Vec3 u_eq = Vec3::Zero();   // equivalent control for the nominal system
  Vec3 u_n = Vec3::Zero();    // switching term compensating the disturbance
  Vec3 s = Vec3::Zero();      // switching function
  Vec3 sigma = Vec3::Zero();  // attitude part of the switching function
  double g = 0.0;             // sinh(q_e0) ||q_ev||
  double g_dot = 0.0;         // analytic time derivative of g
  double gamma2 = 0.0;        // dynamic anti-unwinding gain, N*m
};

/// sigma = sinh(q_e0) q_ev. The sinh factor vanishes at q_e0 = 0 and changes
/// sign across it, which is what gives the surface both equilibria.
inline Vec3 sigma(const Quaternion& q_e) { return std::sinh(q_e.q0) * q_e.qv; }

/// Switching function s = omega_e + lambda * sigma(q_e).
inline Vec3 switching_function(const ErrorState& err, const AusmamcParams& p) {
  return err.omega_e + p.lambda * sigma(err.q_e);
}

/// Analytic sigma_dot via the error kinematics:
/// sigma_dot = cosh(q_e0) q_e0_dot q_ev + sinh(q_e0) q_ev_dot with
/// q_e0_dot = -1/2 q_ev . omega_e and q_ev_dot = 1/2 (q_e0 I + [q_ev]x) omega_e.
inline Vec3 sigma_dot(const ErrorState& err) {
  const double q0 = err.q_e.q0;
  const Vec3& qv = err.q_e.qv;
  const Vec3& w = err.omega_e;
  const double q0_dot = -0.5 * qv.dot(w);
  const Vec3 qv_dot = 0.5 * (q0 * w + qv.cross(w));
  return std::cosh(q0) * q0_dot * qv + std::sinh(q0) * qv_dot;
}

/// g = sinh(q_e0) ||q_ev||; shares q_e0's sign whenever q_ev is nonzero.
inline double g_value(const Quaternion& q_e) {
  return std::sinh(q_e.q0) * q_e.qv.norm();
}

/// Analytic g_dot. The q_ev^T q_ev_dot / ||q_ev|| term is a 0/0 form at the
/// equilibria; below qev_floor the whole derivative is reported as 0 (there
/// the anti-unwinding gain has no work left to do).
inline double g_dot(const ErrorState& err, double qev_floor) {
  const double n = err.q_e.qv.norm();
  if (n < qev_floor) {
    return 0.0;
  }
  const double q0 = err.q_e.q0;
  const double qv_w = err.q_e.qv.dot(err.omega_e);
  const double q0_dot = -0.5 * qv_w;
  const double qv_dot_proj = 0.5 * q0 * qv_w;  // q_ev . q_ev_dot
  return std::cosh(q0) * q0_dot * n + std::sinh(q0) * qv_dot_proj / n;
}

/// Dynamic gain gamma2 = (lambda / lambda_min(J^-1)) |g_dot|; nonnegative,
/// zero exactly when g_dot is.
inline double gamma2_gain(double g_dot_value, double lambda, double lambda_min_inverse) {
  return lambda / lambda_min_inverse * std::abs(g_dot_value);
}

/// Equivalent control u_eq = omega_e x J omega_e - lambda J sigma_dot, the
/// torque that holds s_dot = 0 for the disturbance-free system.
inline Vec3 u_equivalent(const ErrorState& err, const InertiaMatrix& J,
                         const AusmamcParams& p) {
  return err.omega_e.cross(J.matrix() * err.omega_e) - p.lambda * (J.matrix() * sigma_dot(err));
}

/// Boundary-layer switching: sgn(s_i) outside |s_i| >= epsilon, otherwise
/// arctan(s_i tan(1) / epsilon). Continuous at the layer edge since
/// arctan(tan 1) = 1.
inline Vec3 smooth_switch(const Vec3& s, double epsilon) {
  const double k = std::tan(1.0) / epsilon;
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(s[i]) >= epsilon) {
      out[i] = s[i] > 0.0 ? 1.0 : -1.0;
    } else {
      out[i] = std::atan(s[i] * k);
    }
  }
  return out;
}

/// Discontinuous switching with sgn(0) = -1 per component, except that the
/// whole vector is zero inside a ||s|| <= zero_tol band so that trajectories
/// already on the surface are left alone.
inline Vec3 exact_switch(const Vec3& s, double zero_tol) {
  if (s.norm() <= zero_tol) {
    return Vec3::Zero();
  }
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    out[i] = s[i] > 0.0 ? 1.0 : -1.0;
  }
  return out;
}

namespace detail {

inline Vec3 switch_term(const Vec3& s, const AusmamcParams& p, SwitchingMode mode) {
  return mode == SwitchingMode::smoothed ? smooth_switch(s, p.epsilon)
                                         : exact_switch(s, p.sgn_zero_tol);
}

}  // namespace detail

/**
 * Anti-unwinding sliding-mode attitude maneuver control law:
 *
 *   u    = u_eq + u_n
 *   u_eq = omega_e x J omega_e - lambda J sigma_dot
 *   u_n  = -(gamma1 + gamma2(t)) f(s)
 *   s    = omega_e + lambda sinh(q_e0) q_ev
 *
 * with gamma2 = (lambda / lambda_min(J^-1)) |g_dot|. The sinh-shaped surface
 * makes both q_e0 = +1 and q_e0 = -1 equilibria, and gamma2 keeps the
 * rotation angle moving toward the nearer one during the reaching phase.
 */
inline ControlOutput control(const ErrorState& err, const InertiaMatrix& J,
                             const AusmamcParams& p,
                             SwitchingMode mode = SwitchingMode::smoothed) {
  ControlOutput out;
  out.sigma = sigma(err.q_e);
  out.s = err.omega_e + p.lambda * out.sigma;
  out.g = g_value(err.q_e);
  out.g_dot = g_dot(err, p.qev_floor);
  out.gamma2 = gamma2_gain(out.g_dot, p.lambda, J.lambda_min_inverse());
  out.u_eq = u_equivalent(err, J, p);
  out.u_n = -(p.gamma1 + out.gamma2) * detail::switch_term(out.s, p, mode);
  out.u = out.u_eq + out.u_n;
  return out;
}

/**
 * Unwinding-prone baseline: the same sliding-mode structure with the plain
 * surface sigma_b = q_ev (only q_e0 = +1 is an equilibrium) and gamma2 = 0.
 * Started near q_e0 = -1 it drives the attitude the long way around to +1,
 * which is exactly the behavior the anti-unwinding law removes.
 */
inline ControlOutput baseline_control(const ErrorState& err, const InertiaMatrix& J,
                                      const AusmamcParams& p,
                                      SwitchingMode mode = SwitchingMode::smoothed) {
  ControlOutput out;
  const double q0 = err.q_e.q0;
  const Vec3& qv = err.q_e.qv;
  out.sigma = qv;
  out.s = err.omega_e + p.lambda * out.sigma;
  const Vec3 sigma_b_dot = 0.5 * (q0 * err.omega_e + qv.cross(err.omega_e));
  out.u_eq = err.omega_e.cross(J.matrix() * err.omega_e) - p.lambda * (J.matrix() * sigma_b_dot);
  out.u_n = -p.gamma1 * detail::switch_term(out.s, p, mode);
  out.u = out.u_eq + out.u_n;
  // g and g_dot stay meaningful diagnostics for unwinding analysis.
  out.g = g_value(err.q_e);
  out.g_dot = g_dot(err, p.qev_floor);
  out.gamma2 = 0.0;
  return out;
}

}  // namespace ausmamc

#endif  // AUSMAMC_CONTROLLER_HPP
