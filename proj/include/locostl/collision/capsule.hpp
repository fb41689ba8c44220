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
#include <algorithm>
#include <stdexcept>

namespace locostl::collision {

using Eigen::Vector3d;

struct Capsule {
  Vector3d a = Vector3d::Zero();
  Vector3d b = Vector3d::Zero();
  double radius = 0.0;
};

namespace detail {

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Closest-point parameters between segments a0a1 and b0b1 by constrained
// quadratic minimization over the unit square.
inline double segment_segment_distance(const Vector3d& a0, const Vector3d& a1,
                                       const Vector3d& b0,
                                       const Vector3d& b1) {
  Vector3d d1 = a1 - a0;
  Vector3d d2 = b1 - b0;
  Vector3d r = a0 - b0;
  double a = d1.squaredNorm();
  double e = d2.squaredNorm();
  double f = d2.dot(r);
  double s = 0.0, t = 0.0;
  constexpr double kEps = 1e-12;
  if (a <= kEps && e <= kEps) {
    return r.norm();
  }
  if (a <= kEps) {
    t = clamp01(f / e);
  } else {
    double c = d1.dot(r);
    if (e <= kEps) {
      s = clamp01(-c / a);
    } else {
      double b = d1.dot(d2);
      double denom = a * e - b * b;
      if (denom > kEps)
        s = clamp01((b * f - c * e) / denom);  // parallel: keep s = 0
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = clamp01(-c / a);
      } else if (t > 1.0) {
        t = 1.0;
        s = clamp01((b - c) / a);
      }
    }
  }
  return ((a0 + s * d1) - (b0 + t * d2)).norm();
}

}  // namespace detail

// Minimum distance between capsule surfaces; negative values measure the
// depth of interpenetration.
inline double capsule_distance(const Capsule& a, const Capsule& b) {
  if (a.radius <= 0.0 || b.radius <= 0.0)
    throw std::invalid_argument("capsule radius must be positive");
  return detail::segment_segment_distance(a.a, a.b, b.a, b.b) -
         (a.radius + b.radius);
}

/// Brute-force reference used by tests and speed baselines: samples n points
/// per segment and takes the pairwise minimum.
inline double capsule_distance_sampled(const Capsule& a, const Capsule& b,
                                       int n = 100) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    Vector3d pa = a.a + (a.b - a.a) * (double(i) / (n - 1));
    for (int j = 0; j < n; ++j) {
      Vector3d pb = b.a + (b.b - b.a) * (double(j) / (n - 1));
      best = std::min(best, (pa - pb).norm());
    }
  }
  return best - (a.radius + b.radius);
}

}  // namespace locostl::collision
