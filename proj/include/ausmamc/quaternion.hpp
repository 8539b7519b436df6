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

#ifndef AUSMAMC_QUATERNION_HPP
#define AUSMAMC_QUATERNION_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "ausmamc/errors.hpp"

namespace ausmamc {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

/**
 * Unit rotation quaternion, stored scalar-first as [q0, qv].
 *
 * All file formats and APIs in this library use the scalar-first layout.
 * Both q and -q represent the same physical rotation; the library never
 * collapses that double cover, since the whole point of the controller is
 * handling both equilibria.
 */
struct Quaternion {
  double q0 = 1.0;
  Vec3 qv = Vec3::Zero();

  Quaternion() = default;
  Quaternion(double scalar, const Vec3& vector) : q0(scalar), qv(vector) {}
  Quaternion(double scalar, double x, double y, double z) : q0(scalar), qv(x, y, z) {}

  static Quaternion identity() { return {1.0, Vec3::Zero()}; }

  double squared_norm() const { return q0 * q0 + qv.squaredNorm(); }
  double norm() const { return std::sqrt(squared_norm()); }

  Quaternion normalized() const {
    const double n = norm();
    return {q0 / n, qv / n};
  }

  Vec4 coeffs() const { return {q0, qv.x(), qv.y(), qv.z()}; }

  bool allFinite() const { return std::isfinite(q0) && qv.allFinite(); }
};

inline bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.q0 == b.q0 && a.qv == b.qv;
}

/// Hamilton product a (x) b, no input checks, no normalization. The norm of
/// the result is the product of the input norms.
inline Quaternion hamilton_product(const Quaternion& a, const Quaternion& b) {
  return {a.q0 * b.q0 - a.qv.dot(b.qv),
          a.q0 * b.qv + b.q0 * a.qv + a.qv.cross(b.qv)};
}

/// Quaternion multiplication for rotation quaternions. Inputs must be finite;
/// unit inputs yield a unit result to rounding accuracy.
inline Quaternion multiply(const Quaternion& a, const Quaternion& b) {
  if (!a.allFinite() || !b.allFinite()) {
    throw ValidationError("multiply: non-finite quaternion component");
  }
  return hamilton_product(a, b);
}

inline Quaternion conjugate(const Quaternion& q) { return {q.q0, -q.qv}; }

/// Attitude error q_e = q_d* (x) q of the current attitude q relative to the
/// desired attitude q_d. Componentwise: q_e0 = q_dv.q_v + q_d0 q_0 and
/// q_ev = q_d0 q_v - q_dv x q_v - q_0 q_dv.
inline Quaternion error_quaternion(const Quaternion& q, const Quaternion& q_d) {
  return multiply(conjugate(q_d), q);
}

/// Principal rotation angle theta = 2 arccos(q_e0) in [0, 2pi].
/// q_e0 is clamped into [-1, 1] first: rounding can push it to 1 + 1e-16 at
/// the equilibria, and arccos would return NaN there.
inline double rotation_angle(const Quaternion& q_e) {
  const double c = std::clamp(q_e.q0, -1.0, 1.0);
  return 2.0 * std::acos(c);
}

/// Euler axis/angle form of an error quaternion. At theta in {0, 2pi} the
/// axis is undefined; it is reported as [1, 0, 0] with `degenerate` set.
struct RotationAngleAxis {
  double theta = 0.0;      // radians, [0, 2pi]
  Vec3 axis = Vec3::UnitX();
  bool degenerate = true;
};

inline RotationAngleAxis rotation_angle_axis(const Quaternion& q_e) {
  RotationAngleAxis out;
  out.theta = rotation_angle(q_e);
  const double n = q_e.qv.norm();
  if (n > 1e-12) {
    out.axis = q_e.qv / n;
    out.degenerate = false;
  }
  return out;
}

/// Rotation matrix of the error quaternion:
/// R = (q_e0^2 - q_ev.q_ev) I + 2 q_ev q_ev^T - 2 q_e0 [q_ev]x.
inline Mat3 rotation_matrix(const Quaternion& q_e) {
  const double w = q_e.q0;
  const Vec3& v = q_e.qv;
  Mat3 vx;
  vx << 0.0, -v.z(), v.y(),
        v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
  return (w * w - v.squaredNorm()) * Mat3::Identity() + 2.0 * v * v.transpose() -
         2.0 * w * vx;
}

/// Skew-symmetric cross-product matrix: skew(x) * y == x.cross(y).
inline Mat3 skew(const Vec3& x) {
  Mat3 m;
  m << 0.0, -x.z(), x.y(),
       x.z(), 0.0, -x.x(),
       -x.y(), x.x(), 0.0;
  return m;
}

/**
 * Intrinsic 3-2-1 (yaw-pitch-roll) Euler angles of an attitude quaternion.
 *
 * pitch is restricted to [-pi/2, pi/2]. Inside the gimbal-lock region
 * (|pitch| > pi/2 - 1e-6) only the combination of roll and yaw is observable;
 * by convention roll is reported as 0 and `gimbal_lock` is set.
 */
struct EulerAngles {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
  bool gimbal_lock = false;
};

inline EulerAngles euler_angles(const Quaternion& q) {
  const double w = q.q0, x = q.qv.x(), y = q.qv.y(), z = q.qv.z();
  EulerAngles e;
  const double sinp = 2.0 * (w * y - z * x);
  e.pitch = std::asin(std::clamp(sinp, -1.0, 1.0));
  if (std::abs(e.pitch) > std::numbers::pi / 2.0 - 1e-6) {
    e.gimbal_lock = true;
    e.roll = 0.0;
    e.yaw = 2.0 * std::atan2(z, w);
  } else {
    e.roll = std::atan2(2.0 * (w * x + y * z), 1.0 - 2.0 * (x * x + y * y));
    e.yaw = std::atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z));
  }
  return e;
}

/// Inverse of euler_angles away from gimbal lock.
inline Quaternion quaternion_from_euler(double roll, double pitch, double yaw) {
  const Quaternion qx{std::cos(roll / 2.0), Vec3(std::sin(roll / 2.0), 0.0, 0.0)};
  const Quaternion qy{std::cos(pitch / 2.0), Vec3(0.0, std::sin(pitch / 2.0), 0.0)};
  const Quaternion qz{std::cos(yaw / 2.0), Vec3(0.0, 0.0, std::sin(yaw / 2.0))};
  return hamilton_product(hamilton_product(qz, qy), qx);
}

}  // namespace ausmamc

#endif  // AUSMAMC_QUATERNION_HPP
