// Copyright 2026 The LocoSTL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "locostl/rom/dynamics.hpp"

namespace locostl::rom {

// Periodic reference gait. The sagittal apex velocity and the lateral apex
// offset fix the contact-switching state through the closed-form flow; the
// apex sits at mid-step. y is positive toward the robot's left.
struct NominalGait {
  double step_duration = 0.4;   // [s]
  double apex_velocity = 0.6;   // sagittal CoM speed at apex [m/s]
  double apex_offset = 0.11;    // lateral CoM distance from stance foot [m]

  /// CoM state at the start of a walking step (contact-switching state).
  AugmentedState contact_state(StanceParity parity,
                               const ModelParams& params) const {
    double w = params.omega();
    double half = 0.5 * step_duration;
    double c = std::cosh(w * half);
    double s = std::sinh(w * half);
    double lat = parity == StanceParity::RightStance ? 1.0 : -1.0;
    AugmentedState x;
    x.p_com = {-apex_velocity / w * s, lat * apex_offset * c, params.z0};
    x.v_com = {apex_velocity * c, -lat * apex_offset * w * s, 0.0};
    x.p_swing = {-step_length(params), lat * step_width(params),
                 params.terrain_height};
    return x;
  }

  /// CoM state at the apex of a walking step.
  AugmentedState apex_state(StanceParity parity,
                            const ModelParams& params) const {
    double lat = parity == StanceParity::RightStance ? 1.0 : -1.0;
    AugmentedState x;
    x.p_com = {0.0, lat * apex_offset, params.z0};
    x.v_com = {apex_velocity, 0.0, 0.0};
    x.p_swing = {0.0, lat * step_width(params), params.terrain_height};
    return x;
  }

  /// Landing offset of the swing foot at the end of a step, stance frame.
  Eigen::Vector2d foothold(StanceParity parity,
                           const ModelParams& params) const {
    double lat = parity == StanceParity::RightStance ? 1.0 : -1.0;
    return {step_length(params), lat * step_width(params)};
  }

  double step_length(const ModelParams& params) const {
    double w = params.omega();
    return 2.0 * apex_velocity / w * std::sinh(w * 0.5 * step_duration);
  }

  double step_width(const ModelParams& params) const {
    double w = params.omega();
    return 2.0 * apex_offset * std::cosh(w * 0.5 * step_duration);
  }
};

struct GaitRollout {
  std::vector<AugmentedState> states;   // one per knot
  std::vector<Control> controls;        // one per in-step interval
  std::vector<double> durations;        // one per walking step
  std::vector<StanceParity> parity;     // one per walking step
};

// Reference trajectory over whole walking steps, sampled at knots_per_step
// knots each. The swing foot travels to the nominal foothold at constant
// velocity. first_elapsed shortens step 0 (receding-horizon alignment).
inline GaitRollout nominal_rollout(const NominalGait& gait,
                                   const ModelParams& params,
                                   StanceParity first_parity, int steps,
                                   int knots_per_step,
                                   double first_elapsed = 0.0) {
  GaitRollout out;
  double w = params.omega();
  for (int j = 0; j < steps; ++j) {
    StanceParity parity = j % 2 == 0 ? first_parity : flip(first_parity);
    double offset = j == 0 ? first_elapsed : 0.0;
    double duration = gait.step_duration - offset;
    AugmentedState start = gait.contact_state(parity, params);
    AugmentedState x0 = flow_analytic(start, Control::Zero(), offset, params);
    Eigen::Vector2d land = gait.foothold(parity, params);
    Eigen::Vector3d target{land.x(), land.y(), params.terrain_height};
    Control u = (target - start.p_swing) / gait.step_duration;
    x0.p_swing = start.p_swing + u * offset;
    double dt = duration / (knots_per_step - 1);
    AugmentedState x = x0;
    for (int k = 0; k < knots_per_step; ++k) {
      if (k > 0) {
        AxisState sx = flow_axis({x.p_com.x(), x.v_com.x()}, dt, w);
        AxisState sy = flow_axis({x.p_com.y(), x.v_com.y()}, dt, w);
        x.p_com.x() = sx.p;
        x.p_com.y() = sy.p;
        x.v_com.x() = sx.v;
        x.v_com.y() = sy.v;
        x.p_swing += u * dt;
        out.controls.push_back(u);
      }
      out.states.push_back(x);
    }
    out.durations.push_back(duration);
    out.parity.push_back(parity);
  }
  return out;
}

}  // namespace locostl::rom
