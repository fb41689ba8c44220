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

#include <array>
#include <cmath>

#include "locostl/collision/capsule.hpp"

namespace locostl::collision {

// Capsule pairs with collision risk between the two legs, in output order.
enum PairIndex {
  kLSRS = 0,  // left shin  - right shin
  kLSRT = 1,  // left shin  - right tarsus
  kLSRA = 2,  // left shin  - right achilles rod
  kLTRS = 3,  // left tarsus - right shin
  kLTRT = 4,  // left tarsus - right tarsus
  kLARS = 5,  // left achilles rod - right shin
};
inline constexpr int kNumPairs = 6;

inline constexpr const char* kPairNames[kNumPairs] = {
    "LSRS", "LSRT", "LSRA", "LTRS", "LTRT", "LARS"};

/// Pair index of the mirrored configuration (left/right roles swapped).
inline constexpr int kMirroredPair[kNumPairs] = {kLSRS, kLTRS, kLARS,
                                                 kLSRT, kLTRT, kLSRA};

struct LegCapsules {
  Capsule shin;
  Capsule tarsus;
  Capsule achilles;
};

// Planar-placement surrogate of the biped's leg geometry. Hips sit laterally
// offset from the CoM; a two-link closed-form knee placement (knee folded
// backward) hangs shin and tarsus capsules between knee and foot, with a thin
// rod trailing the shin. Deterministic and continuous in (p_com, p_swing).
// The canonical chart pins the LEFT foot as stance at the frame origin.
struct LegGeometryModel {
  double hip_offset = 0.1305;   // lateral hip distance from the CoM [m]
  double link_length = 0.7;     // equal upper/lower link length [m]
  double shin_radius = 0.04;
  double tarsus_radius = 0.04;
  double rod_radius = 0.012;
  double rod_back_offset = 0.07;  // rod offset behind the shin [m]

  LegCapsules leg(const Vector3d& hip, const Vector3d& foot) const {
    Vector3d span = foot - hip;
    double d = span.norm();
    double reach = 2.0 * link_length;
    // keep the two-link placement well defined for extreme queries
    double d_eff = std::min(d, 0.999 * reach);
    Vector3d u = span / std::max(d, 1e-12);
    double half = 0.5 * d_eff;
    double h = std::sqrt(std::max(link_length * link_length - half * half,
                                  1e-10));
    // knee normal: forward axis projected off the leg direction
    Vector3d fwd{1.0, 0.0, 0.0};
    Vector3d e = fwd - fwd.dot(u) * u;
    double en = e.norm();
    e = en > 1e-9 ? Vector3d(e / en) : Vector3d(0.0, 1.0, 0.0);
    Vector3d knee = hip + half * u - h * e;
    Vector3d ankle = knee + 0.5 * (foot - knee);
    LegCapsules out;
    out.shin = {knee, ankle, shin_radius};
    out.tarsus = {ankle, foot, tarsus_radius};
    out.achilles = {knee - rod_back_offset * e, ankle - 0.4 * rod_back_offset * e,
                    rod_radius};
    return out;
  }

  /// Both legs for a left-stance configuration (left foot at the origin).
  std::pair<LegCapsules, LegCapsules> legs(const Vector3d& p_com,
                                           const Vector3d& p_swing) const {
    Vector3d hip_left = p_com + Vector3d{0.0, hip_offset, 0.0};
    Vector3d hip_right = p_com + Vector3d{0.0, -hip_offset, 0.0};
    return {leg(hip_left, Vector3d::Zero()), leg(hip_right, p_swing)};
  }

  /// Analytic oracle distances for the six risk pairs, left-stance chart.
  std::array<double, kNumPairs> pair_distances(const Vector3d& p_com,
                                               const Vector3d& p_swing) const {
    auto [left, right] = legs(p_com, p_swing);
    std::array<double, kNumPairs> d;
    d[kLSRS] = capsule_distance(left.shin, right.shin);
    d[kLSRT] = capsule_distance(left.shin, right.tarsus);
    d[kLSRA] = capsule_distance(left.shin, right.achilles);
    d[kLTRS] = capsule_distance(left.tarsus, right.shin);
    d[kLTRT] = capsule_distance(left.tarsus, right.tarsus);
    d[kLARS] = capsule_distance(left.achilles, right.shin);
    return d;
  }

  double min_pair_distance(const Vector3d& p_com,
                           const Vector3d& p_swing) const {
    auto d = pair_distances(p_com, p_swing);
    double m = d[0];
    for (double x : d) m = std::min(m, x);
    return m;
  }
};

}  // namespace locostl::collision
