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

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

namespace locostl::rom {

using Eigen::Vector3d;

/// Which foot carries the robot; flips at every contact switch.
enum class StanceParity { LeftStance, RightStance };

inline StanceParity flip(StanceParity p) {
  return p == StanceParity::LeftStance ? StanceParity::RightStance
                                       : StanceParity::LeftStance;
}

inline const char* to_string(StanceParity p) {
  return p == StanceParity::LeftStance ? "left" : "right";
}

/// Pendulum constants. omega is derived and must track z0.
struct ModelParams {
  double z0 = 0.8;             // constant CoM height [m]
  double g = 9.81;             // [m/s^2]
  double mass = 31.0;          // impulse -> delta-v conversion [kg]
  Vector3d u_max{3.0, 3.0, 2.0};  // swing velocity box [m/s]
  double terrain_height = 0.0;    // [m]

  double omega() const {
    if (z0 <= 0.0) throw std::invalid_argument("CoM height must be positive");
    return std::sqrt(g / z0);
  }
};

// CoM and swing-foot state in the stance-foot frame. p_com.z stays at the
// configured constant height; the vertical CoM dynamics are frozen.
struct AugmentedState {
  Vector3d p_com = Vector3d::Zero();
  Vector3d v_com = Vector3d::Zero();
  Vector3d p_swing = Vector3d::Zero();

  bool all_finite() const {
    return p_com.allFinite() && v_com.allFinite() && p_swing.allFinite();
  }
};

/// Swing-foot velocity command.
using Control = Vector3d;

}  // namespace locostl::rom
