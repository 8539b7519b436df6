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

#include <cmath>

#include "ausmamc/plant.hpp"
#include "ausmamc/scenario.hpp"
#include "test_helpers.hpp"

using namespace ausmamc;
using ausmamc::testing::random_unit_quaternion;
using ausmamc::testing::random_vec3;

namespace {

Mat3 stock_inertia() {
  Mat3 J;
  J << 20.0, 0.0, 0.9,
       0.0, 17.0, 0.0,
       0.9, 0.0, 15.0;
  return J;
}

}  // namespace

TEST_CASE("InertiaMatrix caches the closed-form spectrum") {
  const InertiaMatrix J(stock_inertia());
  // Frozen eigenvalues of [[20,0,0.9],[0,17,0],[0.9,0,15]].
  REQUIRE(std::abs(J.eigenvalues()[0] - 14.842933948882715) <= 1e-9);
  REQUIRE(std::abs(J.eigenvalues()[1] - 17.0) <= 1e-9);
  REQUIRE(std::abs(J.eigenvalues()[2] - 20.157066051117283) <= 1e-9);
  REQUIRE(std::abs(J.lambda_min_inverse() - 0.04961039456159202) <= 1e-15);
  // lambda_min(J^-1) * lambda_max(J) = 1 by construction.
  REQUIRE(std::abs(J.lambda_min_inverse() * J.eigenvalues().maxCoeff() - 1.0) <= 1e-15);
  // Cross-check against a direct eigensolve of the cached inverse.
  Eigen::SelfAdjointEigenSolver<Mat3> es(J.inverse());
  REQUIRE(std::abs(es.eigenvalues().minCoeff() - J.lambda_min_inverse()) <= 1e-12);
  REQUIRE((J.matrix() * J.inverse() - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("InertiaMatrix rejects bad matrices at construction") {
  Mat3 asym = stock_inertia();
  asym(0, 1) = 0.5;  // breaks symmetry
  REQUIRE_THROWS_AS(InertiaMatrix(asym), ValidationError);

  Mat3 indefinite = Mat3::Identity();
  indefinite(2, 2) = -1.0;
  REQUIRE_THROWS_AS(InertiaMatrix(indefinite), ValidationError);

  REQUIRE_THROWS_AS(InertiaMatrix(Mat3::Zero()), ValidationError);
}

TEST_CASE("disturbance matches the stock model") {
  const DisturbanceModel model = DisturbanceModel::paper_default();
  const Vec3 d0 = disturbance(0.0, model);
  REQUIRE(d0.x() == 0.0);
  REQUIRE(d0.y() == 0.0);
  REQUIRE(d0.z() == -0.01);
  REQUIRE(std::abs(model.d_max() - 0.015) <= 1e-17);

  for (double t = 0.0; t <= 300.0; t += 0.37) {
    REQUIRE(disturbance(t, model).norm() <= model.d_max() + 1e-15);
  }

  const DisturbanceModel none = DisturbanceModel::zero();
  REQUIRE(none.d_max() == 0.0);
  for (double t = 0.0; t <= 10.0; t += 1.0) {
    REQUIRE(disturbance(t, none).isZero(0.0));
  }
}

TEST_CASE("body_derivative at an equilibrium is zero") {
  const InertiaMatrix J(stock_inertia());
  const BodyState rest{Quaternion::identity(), Vec3::Zero()};
  const StateDerivative d = body_derivative(rest, Vec3::Zero(), Vec3::Zero(), J);
  REQUIRE(d.q_dot.isZero(0.0));
  REQUIRE(d.omega_dot.isZero(0.0));
}

TEST_CASE("body_derivative kinematics at the identity") {
  const InertiaMatrix J(stock_inertia());
  const BodyState state{Quaternion::identity(), Vec3(0.1, 0.0, 0.0)};
  const StateDerivative d = body_derivative(state, Vec3::Zero(), Vec3::Zero(), J);
  REQUIRE(d.q_dot[0] == 0.0);
  REQUIRE(d.q_dot[1] == 0.05);
  REQUIRE(d.q_dot[2] == 0.0);
  REQUIRE(d.q_dot[3] == 0.0);
}

TEST_CASE("quaternion norm is conserved by the kinematics") {
  const InertiaMatrix J(stock_inertia());
  std::mt19937 gen(31);
  for (int i = 0; i < 100; ++i) {
    const BodyState state{random_unit_quaternion(gen), random_vec3(gen)};
    const StateDerivative d =
        body_derivative(state, random_vec3(gen), random_vec3(gen, 0.01), J);
    // d/dt (q . q) = 2 q . q_dot = 0 along the flow.
    const double dot = state.q.q0 * d.q_dot[0] + state.q.qv.dot(d.q_dot.tail<3>());
    REQUIRE(std::abs(dot) <= 1e-14);
  }
}

TEST_CASE("error_state of the stock maneuvers") {
  const BodyState start{Quaternion::identity(), Vec3::Zero()};

  const ErrorState ea = error_state(start, preset_scenario_a().q_desired, Vec3::Zero());
  REQUIRE(ea.q_e.q0 == 0.8832);
  REQUIRE(ea.q_e.qv == Vec3(-0.3, 0.2, 0.3));
  REQUIRE(ea.omega_e.isZero(0.0));

  const ErrorState eb = error_state(start, preset_scenario_b().q_desired, Vec3::Zero());
  REQUIRE(eb.q_e.q0 == -0.6403);
  REQUIRE(eb.q_e.qv == Vec3(0.5, 0.3, -0.5));
  REQUIRE(eb.omega_e.isZero(0.0));
}

TEST_CASE("error_state at the target is the identity error") {
  std::mt19937 gen(32);
  const Quaternion q_d = random_unit_quaternion(gen);
  const ErrorState e = error_state({q_d, Vec3::Zero()}, q_d, Vec3::Zero());
  REQUIRE(std::abs(e.q_e.q0 - 1.0) <= 1e-12);
  REQUIRE(e.q_e.qv.norm() <= 1e-12);
  REQUIRE(e.omega_e.isZero(0.0));
}

TEST_CASE("error_state rejects tracking targets") {
  const BodyState start{Quaternion::identity(), Vec3::Zero()};
  REQUIRE_THROWS_AS(error_state(start, Quaternion::identity(), Vec3(0.0, 0.1, 0.0)),
                    ValidationError);
}

TEST_CASE("error_derivative agrees with the body dynamics under the fixed map") {
  const InertiaMatrix J(stock_inertia());
  std::mt19937 gen(33);
  for (int i = 0; i < 50; ++i) {
    const Quaternion q_d = random_unit_quaternion(gen);
    const BodyState state{random_unit_quaternion(gen), random_vec3(gen, 0.3)};
    const Vec3 u = random_vec3(gen, 2.0);
    const Vec3 d = random_vec3(gen, 0.01);

    const StateDerivative body = body_derivative(state, u, d, J);
    const ErrorState err = error_state(state, q_d, Vec3::Zero());
    const StateDerivative errd = error_derivative(err, u, d, J);

    // q_e_dot = q_d* (x) q_dot for a constant desired attitude.
    const Quaternion q_dot_quat(body.q_dot[0], body.q_dot.tail<3>());
    const Quaternion expected = hamilton_product(conjugate(q_d), q_dot_quat);
    REQUIRE(std::abs(errd.q_dot[0] - expected.q0) <= 1e-12);
    REQUIRE((errd.q_dot.tail<3>() - expected.qv).norm() <= 1e-12);
    // Rest-to-rest: omega_e == omega, so the rate dynamics coincide.
    REQUIRE((errd.omega_dot - body.omega_dot).norm() <= 1e-15);
  }
}

TEST_CASE("error_derivative at rest is zero") {
  const InertiaMatrix J(stock_inertia());
  std::mt19937 gen(34);
  const ErrorState err{random_unit_quaternion(gen), Vec3::Zero()};
  const StateDerivative d = error_derivative(err, Vec3::Zero(), Vec3::Zero(), J);
  REQUIRE(d.q_dot.isZero(0.0));
  REQUIRE(d.omega_dot.isZero(0.0));
}
