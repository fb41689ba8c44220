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

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "locostl/rom/model.hpp"

namespace locostl::rom {

/// Horizontal pendulum state along one axis.
struct AxisState {
  double p = 0.0;
  double v = 0.0;
};

/// Closed-form pendulum flow: p(t) = p0 cosh(wt) + (v0/w) sinh(wt).
inline AxisState flow_axis(const AxisState& x0, double t, double omega) {
  double c = std::cosh(omega * t);
  double s = std::sinh(omega * t);
  return {x0.p * c + x0.v / omega * s, omega * x0.p * s + x0.v * c};
}

/// Exact flow of the CoM for t >= 0; swing foot advances with constant u.
inline AugmentedState flow_analytic(const AugmentedState& x, const Control& u,
                                    double t, const ModelParams& params) {
  double w = params.omega();
  AugmentedState out = x;
  AxisState sx = flow_axis({x.p_com.x(), x.v_com.x()}, t, w);
  AxisState sy = flow_axis({x.p_com.y(), x.v_com.y()}, t, w);
  out.p_com.x() = sx.p;
  out.p_com.y() = sy.p;
  out.v_com.x() = sx.v;
  out.v_com.y() = sy.v;
  out.p_com.z() = params.z0;
  out.v_com.z() = 0.0;
  out.p_swing = x.p_swing + u * t;
  return out;
}

// Second-order Taylor step for the CoM; the swing foot uses a first-order
// update, which is exact for piecewise-constant velocity commands.
inline AugmentedState step_discrete(const AugmentedState& x, const Control& u,
                                    double dt, const ModelParams& params) {
  double w2 = params.g / params.z0;
  double h = 0.5 * w2 * dt * dt;
  AugmentedState out = x;
  for (int axis = 0; axis < 2; ++axis) {
    double p = x.p_com[axis];
    double v = x.v_com[axis];
    out.p_com[axis] = p + v * dt + h * p;
    out.v_com[axis] = v + w2 * p * dt + h * v;
  }
  out.p_com.z() = params.z0;
  out.v_com.z() = 0.0;
  out.p_swing = x.p_swing + u * dt;
  return out;
}

class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// Contact switch: the frame re-anchors to the landing foot. Velocity carries
// over; the old stance foot becomes the swing foot at the mirrored offset.
inline AugmentedState reset_map_unchecked(const AugmentedState& x_minus) {
  AugmentedState x_plus;
  x_plus.p_com = x_minus.p_com - x_minus.p_swing;
  x_plus.v_com = x_minus.v_com;
  x_plus.p_swing = -x_minus.p_swing;
  return x_plus;
}

/// Checked reset: the swing foot must sit at terrain height.
inline std::pair<AugmentedState, StanceParity> reset_map(
    const AugmentedState& x_minus, StanceParity parity,
    const ModelParams& params, double guard_tol = 1e-6) {
  double gap = x_minus.p_swing.z() - params.terrain_height;
  if (std::abs(gap) > guard_tol)
    throw GuardError("contact guard violated: swing foot " +
                     std::to_string(gap) + " m off terrain");
  return {reset_map_unchecked(x_minus), flip(parity)};
}

struct KeyframeHit {
  int index = 0;           // first knot at or past the apex
  bool interpolated = false;
  double fraction = 0.0;   // position of the crossing inside [index-1, index]
};

/// First upward zero crossing of the sagittal CoM position, if any.
inline std::optional<KeyframeHit> detect_keyframe_px(
    const std::vector<double>& px) {
  for (std::size_t i = 1; i < px.size(); ++i) {
    if (px[i - 1] < 0.0 && px[i] >= 0.0) {
      KeyframeHit hit;
      hit.index = static_cast<int>(i);
      if (px[i] > 0.0) {
        hit.interpolated = true;
        hit.fraction = -px[i - 1] / (px[i] - px[i - 1]);
      }
      return hit;
    }
  }
  return std::nullopt;
}

inline std::optional<KeyframeHit> detect_keyframe(
    const std::vector<AugmentedState>& traj) {
  std::vector<double> px(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) px[i] = traj[i].p_com.x();
  return detect_keyframe_px(px);
}

}  // namespace locostl::rom
