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

#ifndef AUSMAMC_PLANT_HPP
#define AUSMAMC_PLANT_HPP

#include <cmath>
#include <string>

#include "ausmamc/quaternion.hpp"

namespace ausmamc {

/**
 * Constant rigid-body inertia matrix with its inverse and the smallest
 * eigenvalue of the inverse cached at construction.
 *
 * J must be symmetric (to 1e-12) and positive definite; anything else is a
 * construction-time error so the per-step dynamics never have to re-check.
 * The eigenvalues come from Eigen's closed-form symmetric 3x3 solver, and
 * lambda_min(J^-1) = 1 / lambda_max(J).
 */
class InertiaMatrix {
 public:
  explicit InertiaMatrix(const Mat3& J) : J_(J) {
    std::vector<std::string> violations;
    if (!J.allFinite()) {
      violations.push_back("inertia matrix has non-finite entries");
    } else {
      if ((J - J.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        violations.push_back("inertia matrix is not symmetric (tolerance 1e-12)");
      }
      Eigen::SelfAdjointEigenSolver<Mat3> es;
      es.computeDirect(J);
      eigenvalues_ = es.eigenvalues();
      if (eigenvalues_.minCoeff() <= 0.0) {
        violations.push_back("inertia matrix is not positive definite");
      }
    }
    if (!violations.empty()) {
      throw ValidationError(std::move(violations));
    }
    J_inv_ = J.inverse();
    lambda_min_inverse_ = 1.0 / eigenvalues_.maxCoeff();
  }

  const Mat3& matrix() const { return J_; }
  const Mat3& inverse() const { return J_inv_; }
  /// Eigenvalues of J, ascending.
  const Vec3& eigenvalues() const { return eigenvalues_; }
  /// lambda_min(J^-1), the gain floor used by the dynamic anti-unwinding term.
  double lambda_min_inverse() const { return lambda_min_inverse_; }

 private:
  Mat3 J_;
  Mat3 J_inv_ = Mat3::Identity();
  Vec3 eigenvalues_ = Vec3::Ones();
  double lambda_min_inverse_ = 1.0;
};

/// Attitude of the body frame w.r.t. the inertial frame plus body rates.
struct BodyState {
  Quaternion q;
  Vec3 omega = Vec3::Zero();  // rad/s
};

/// Attitude error and angular-velocity error relative to the desired frame.
/// For rest-to-rest maneuvers (omega_d = 0) omega_e equals omega exactly.
struct ErrorState {
  Quaternion q_e;
  Vec3 omega_e = Vec3::Zero();  // rad/s
};

enum class DisturbancePattern {
  none,          // identically zero
  sin_sin_ncos,  // [a1 sin(ft), a2 sin(ft), -a3 cos(ft)]
};

/**
 * Periodic external disturbance torque. The stock model is
 * d(t) = 1e-2 * [sin(0.05 t), 0.5 sin(0.05 t), -cos(0.05 t)] N*m;
 * amplitude and frequency are free so robustness sweeps can scale it.
 */
struct DisturbanceModel {
  Vec3 amplitude = Vec3(1e-2, 0.5e-2, 1e-2);  // N*m
  double frequency = 0.05;                    // rad/s
  DisturbancePattern pattern = DisturbancePattern::sin_sin_ncos;

  /// Upper bound on ||d(t)||: sqrt(sum of squared amplitudes).
  double d_max() const {
    return pattern == DisturbancePattern::none ? 0.0 : amplitude.norm();
  }

  static DisturbanceModel paper_default() { return {}; }

  static DisturbanceModel zero() {
    DisturbanceModel m;
    m.amplitude = Vec3::Zero();
    m.pattern = DisturbancePattern::none;
    return m;
  }
};

inline Vec3 disturbance(double t, const DisturbanceModel& model) {
  if (model.pattern == DisturbancePattern::none) {
    return Vec3::Zero();
  }
  const double s = std::sin(model.frequency * t);
  const double c = std::cos(model.frequency * t);
  return {model.amplitude.x() * s, model.amplitude.y() * s, -model.amplitude.z() * c};
}

/// Time derivative of a (quaternion, rate) pair; the quaternion part is a raw
/// 4-vector rate, not re-normalized.
struct StateDerivative {
  Vec4 q_dot = Vec4::Zero();  // scalar-first
  Vec3 omega_dot = Vec3::Zero();
};

/// Rigid-body attitude dynamics:
///   q_dot  = 1/2 [ -q_v^T ; q0 I + [q_v]x ] omega
///   w_dot  = J^-1 (-omega x J omega + u + d)
inline StateDerivative body_derivative(const BodyState& state, const Vec3& u,
                                       const Vec3& d, const InertiaMatrix& J) {
  StateDerivative out;
  const double q0 = state.q.q0;
  const Vec3& qv = state.q.qv;
  const Vec3& w = state.omega;
  out.q_dot[0] = -0.5 * qv.dot(w);
  out.q_dot.tail<3>() = 0.5 * (q0 * w + qv.cross(w));
  out.omega_dot = J.inverse() * (-w.cross(J.matrix() * w) + u + d);
  return out;
}

/// Error state relative to a fixed desired attitude. omega_d must be zero:
/// this library only treats rest-to-rest maneuvers, where omega_e = omega
/// (in general omega_e = omega - R omega_d).
inline ErrorState error_state(const BodyState& state, const Quaternion& q_d,
                              const Vec3& omega_d) {
  if (!omega_d.isZero(0.0)) {
    throw ValidationError(
        "error_state: nonzero desired angular velocity; only rest-to-rest "
        "maneuvers (omega_d = 0) are supported");
  }
  ErrorState err;
  err.q_e = error_quaternion(state.q, q_d);
  err.omega_e = state.omega - rotation_matrix(err.q_e) * omega_d;
  return err;
}

/// Attitude-error dynamics; same structure as body_derivative in the error
/// variables. Cross-checked against body_derivative composed with the fixed
/// desired-attitude map in the tests.
inline StateDerivative error_derivative(const ErrorState& err, const Vec3& u,
                                        const Vec3& d, const InertiaMatrix& J) {
  StateDerivative out;
  const double q0 = err.q_e.q0;
  const Vec3& qv = err.q_e.qv;
  const Vec3& w = err.omega_e;
  out.q_dot[0] = -0.5 * qv.dot(w);
  out.q_dot.tail<3>() = 0.5 * (q0 * w + qv.cross(w));
  out.omega_dot = J.inverse() * (-w.cross(J.matrix() * w) + u + d);
  return out;
}

}  // namespace ausmamc

#endif  // AUSMAMC_PLANT_HPP
