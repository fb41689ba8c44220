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

namespace locostl::riemannian {

/// Requested point lies outside the chart of the manifold coordinate.
class OutOfChartError : public std::runtime_error {
 public:
  explicit OutOfChartError(const std::string& what)
      : std::runtime_error(what) {}
};

// Nominal single-axis pendulum manifold through (p0, v0). The chart is
// non-degenerate when (omega p0)^2 != v0^2; cotangent evaluation further
// needs v on the same side of zero as v0.
struct ManifoldParams {
  double p0 = 0.0;
  double v0 = 0.0;
  double omega = 1.0;
  double zeta0 = 1.0;

  double orbital_nominal() const { return v0 * v0 - omega * omega * p0 * p0; }

  void validate() const {
    if (orbital_nominal() == 0.0)
      throw std::invalid_argument("degenerate manifold chart: (w p0)^2 == v0^2");
  }
};

/// Orbital residual v^2 - w^2 p^2, conserved along the pendulum flow.
inline double orbital(double p, double v, double omega) {
  return v * v - omega * omega * p * p;
}

// Tangent-manifold deviation. Zero exactly on the manifold through (p0, v0);
// equals E0 (E - E0) / w^2 with E the orbital residual, which is the
// cosh^2 - sinh^2 = 1 identity with the terms collected on one side.
inline double sigma(double p, double v, const ManifoldParams& mp) {
  double e0 = mp.orbital_nominal();
  return e0 * (orbital(p, v, mp.omega) - e0) / (mp.omega * mp.omega);
}

inline Eigen::Vector2d sigma_grad(double p, double v,
                                  const ManifoldParams& mp) {
  double e0 = mp.orbital_nominal();
  return {-2.0 * e0 * p, 2.0 * e0 * v / (mp.omega * mp.omega)};
}

inline bool zeta_in_chart(double v, const ManifoldParams& mp) {
  return v * mp.v0 > 0.0;
}

// Cotangent-manifold coordinate zeta0 (v/v0)^(w^2) (p/p0). Acts as a phase
// progression value: it decreases strictly along the flow and crosses zero
// at the apex. Orthogonal to sigma level sets everywhere in-chart.
inline double zeta(double p, double v, const ManifoldParams& mp) {
  if (mp.v0 == 0.0 || mp.p0 == 0.0)
    throw std::invalid_argument("cotangent chart needs p0 != 0 and v0 != 0");
  if (!zeta_in_chart(v, mp))
    throw OutOfChartError("cotangent coordinate undefined for v/v0 <= 0");
  double ratio = v / mp.v0;
  double w2 = mp.omega * mp.omega;
  return mp.zeta0 * std::pow(ratio, w2) * (p / mp.p0);
}

inline Eigen::Vector2d zeta_grad(double p, double v,
                                 const ManifoldParams& mp) {
  if (!zeta_in_chart(v, mp))
    throw OutOfChartError("cotangent coordinate undefined for v/v0 <= 0");
  double ratio = v / mp.v0;
  double w2 = mp.omega * mp.omega;
  double pw = std::pow(ratio, w2);
  return {mp.zeta0 * pw / mp.p0,
          mp.zeta0 * (p / mp.p0) * w2 / mp.v0 * std::pow(ratio, w2 - 1.0)};
}

inline bool phase_in_chart(double p, double v, double omega) {
  return p > 0.0 && p * p - v * v / (omega * omega) > 0.0;
}

// Time offset from the apex for a non-crossing (lateral) trajectory, from
// v = w d sinh(w tau) with d the apex distance. Used in place of the
// cotangent coordinate where the zero apex velocity makes zeta degenerate.
inline double apex_phase(double p, double v, double omega) {
  if (!phase_in_chart(p, v, omega))
    throw OutOfChartError("apex phase undefined: trajectory crosses the foot");
  double d = std::sqrt(p * p - v * v / (omega * omega));
  return std::asinh(v / (omega * d)) / omega;
}

inline Eigen::Vector2d apex_phase_grad(double p, double v, double omega) {
  if (!phase_in_chart(p, v, omega))
    throw OutOfChartError("apex phase undefined: trajectory crosses the foot");
  double d2 = p * p - v * v / (omega * omega);
  double w2d2 = omega * omega * d2;
  return {-v / w2d2, p / w2d2};
}

}  // namespace locostl::riemannian
