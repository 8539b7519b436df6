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

#ifndef AUSMAMC_LYAPUNOV_HPP
#define AUSMAMC_LYAPUNOV_HPP

#include <cmath>
#include <optional>

#include "ausmamc/controller.hpp"

namespace ausmamc {

/// max of cosh on [-1, 1], attained at both endpoints.
inline double lyapunov_kappa() {
  static const double kappa = std::cosh(1.0);
  return kappa;
}

/// Sliding-phase Lyapunov function V1 = 2 (kappa - cosh q_e0). Zero exactly
/// at both equilibria q_e0 = +/-1 and positive elsewhere on [-1, 1]; q_e0 is
/// clamped so slightly off-unit inputs cannot push it negative.
inline double lyapunov_v1(const Quaternion& q_e) {
  const double c = std::clamp(q_e.q0, -1.0, 1.0);
  return 2.0 * (lyapunov_kappa() - std::cosh(c));
}

/// Reaching-phase Lyapunov function V2 = 1/2 s^T s.
inline double lyapunov_v2(const Vec3& s) { return 0.5 * s.squaredNorm(); }

/// Projection v = (q_ev / ||q_ev||)^T s = theta_dot + lambda g, the scalar
/// whose decay toward zero carries the anti-unwinding argument during the
/// reaching phase. Undefined (nullopt) when ||q_ev|| < qev_floor.
inline std::optional<double> proof_v(const ErrorState& err, const AusmamcParams& p,
                                     double qev_floor) {
  const double n = err.q_e.qv.norm();
  if (n < qev_floor) {
    return std::nullopt;
  }
  return err.q_e.qv.dot(switching_function(err, p)) / n;
}

}  // namespace ausmamc

#endif  // AUSMAMC_LYAPUNOV_HPP
