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

#ifndef AUSMAMC_SIM_OPTIONS_HPP
#define AUSMAMC_SIM_OPTIONS_HPP

namespace ausmamc {

/// Fixed-step integration settings. controller_hold switches between
/// re-evaluating the control law at every integrator stage (default, the
/// continuous closed loop) and holding the step-start torque for the whole
/// step (discrete-update realism studies).
struct SimOptions {
  double dt = 1e-3;            // s
  double t_final = 20.0;       // s; 0 yields a single sample at t = 0
  int record_every = 1;        // sample decimation
  bool controller_hold = false;
  bool renormalize = true;     // multiplicative q normalization each step
};

}  // namespace ausmamc

#endif  // AUSMAMC_SIM_OPTIONS_HPP
