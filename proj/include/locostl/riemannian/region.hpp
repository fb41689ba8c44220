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
#include <vector>

#include "locostl/riemannian/manifold.hpp"
#include "locostl/rom/dynamics.hpp"
#include "locostl/rom/gait.hpp"

namespace locostl::riemannian {

// Interval of a raw manifold coordinate with per-side scale factors that map
// the half-widths onto the common margin unit, so a state at the nominal
// value is exactly margin_unit away from both sides.
struct Band {
  double lo = -1.0;
  double hi = 1.0;
  double nominal = 0.0;
  double scale_lo = 1.0;
  double scale_hi = 1.0;

  static Band make(double lo, double nominal, double hi, double margin_unit) {
    if (!(lo < nominal && nominal < hi))
      throw std::invalid_argument("band must straddle its nominal value");
    return {lo, hi, nominal, margin_unit / (nominal - lo),
            margin_unit / (hi - nominal)};
  }

  double dist_lo(double x) const { return scale_lo * (x - lo); }
  double dist_hi(double x) const { return scale_hi * (hi - x); }
};

// Safety region around the nominal keyframe: sagittal sigma/zeta bands plus
// lateral sigma/apex-phase bands, 8 bounds total. The lateral part is stored
// for the right-stance chart; left-stance states are mirrored in.
struct RiemannianRegion {
  ManifoldParams sagittal;
  ManifoldParams lateral;  // right-stance convention, p0 > 0
  Band sigma_x;
  Band zeta_x;
  Band sigma_y;
  Band phase_y;
  double margin_unit = 0.1;
  double off_chart_penalty = -0.5;
};

/// CoM state of a candidate keyframe in the stance-foot frame.
struct KeyframeState {
  double px = 0.0;
  double py = 0.0;
  double vx = 0.0;
  double vy = 0.0;
};

// Bound order: sagittal sigma lo/hi, sagittal zeta lo/hi,
//              lateral sigma lo/hi, lateral phase lo/hi.
inline constexpr int kNumBounds = 8;

inline std::array<double, kNumBounds> bound_distances(
    const KeyframeState& k, const RiemannianRegion& region,
    rom::StanceParity parity) {
  std::array<double, kNumBounds> r;
  double sx = sigma(k.px, k.vx, region.sagittal);
  r[0] = region.sigma_x.dist_lo(sx);
  r[1] = region.sigma_x.dist_hi(sx);
  if (zeta_in_chart(k.vx, region.sagittal)) {
    double zx = zeta(k.px, k.vx, region.sagittal);
    r[2] = region.zeta_x.dist_lo(zx);
    r[3] = region.zeta_x.dist_hi(zx);
  } else {
    r[2] = r[3] = region.off_chart_penalty;
  }
  double mirror = parity == rom::StanceParity::RightStance ? 1.0 : -1.0;
  double pm = mirror * k.py;
  double vm = mirror * k.vy;
  if (pm > 0.0) {
    double sy = sigma(pm, vm, region.lateral);
    r[4] = region.sigma_y.dist_lo(sy);
    r[5] = region.sigma_y.dist_hi(sy);
  } else {
    r[4] = r[5] = region.off_chart_penalty;
  }
  if (phase_in_chart(pm, vm, region.lateral.omega)) {
    double ty = apex_phase(pm, vm, region.lateral.omega);
    r[6] = region.phase_y.dist_lo(ty);
    r[7] = region.phase_y.dist_hi(ty);
  } else {
    r[6] = r[7] = region.off_chart_penalty;
  }
  return r;
}

// Signed distance of bound l together with its gradient in (px, py, vx, vy).
// Off-chart bounds return the flat penalty with a zero gradient.
inline double bound_distance_grad(int l, const KeyframeState& k,
                                  const RiemannianRegion& region,
                                  rom::StanceParity parity,
                                  Eigen::Vector4d* grad) {
  if (grad) grad->setZero();
  double mirror = parity == rom::StanceParity::RightStance ? 1.0 : -1.0;
  double pm = mirror * k.py;
  double vm = mirror * k.vy;
  switch (l) {
    case 0:
    case 1: {
      double sx = sigma(k.px, k.vx, region.sagittal);
      Eigen::Vector2d g = sigma_grad(k.px, k.vx, region.sagittal);
      double sign = l == 0 ? region.sigma_x.scale_lo : -region.sigma_x.scale_hi;
      if (grad) {
        (*grad)[0] = sign * g[0];
        (*grad)[2] = sign * g[1];
      }
      return l == 0 ? region.sigma_x.dist_lo(sx) : region.sigma_x.dist_hi(sx);
    }
    case 2:
    case 3: {
      if (!zeta_in_chart(k.vx, region.sagittal))
        return region.off_chart_penalty;
      double zx = zeta(k.px, k.vx, region.sagittal);
      Eigen::Vector2d g = zeta_grad(k.px, k.vx, region.sagittal);
      double sign = l == 2 ? region.zeta_x.scale_lo : -region.zeta_x.scale_hi;
      if (grad) {
        (*grad)[0] = sign * g[0];
        (*grad)[2] = sign * g[1];
      }
      return l == 2 ? region.zeta_x.dist_lo(zx) : region.zeta_x.dist_hi(zx);
    }
    case 4:
    case 5: {
      if (pm <= 0.0) return region.off_chart_penalty;
      double sy = sigma(pm, vm, region.lateral);
      Eigen::Vector2d g = sigma_grad(pm, vm, region.lateral);
      double sign = l == 4 ? region.sigma_y.scale_lo : -region.sigma_y.scale_hi;
      if (grad) {
        (*grad)[1] = sign * g[0] * mirror;
        (*grad)[3] = sign * g[1] * mirror;
      }
      return l == 4 ? region.sigma_y.dist_lo(sy) : region.sigma_y.dist_hi(sy);
    }
    case 6:
    case 7: {
      if (!phase_in_chart(pm, vm, region.lateral.omega))
        return region.off_chart_penalty;
      double ty = apex_phase(pm, vm, region.lateral.omega);
      Eigen::Vector2d g = apex_phase_grad(pm, vm, region.lateral.omega);
      double sign = l == 6 ? region.phase_y.scale_lo : -region.phase_y.scale_hi;
      if (grad) {
        (*grad)[1] = sign * g[0] * mirror;
        (*grad)[3] = sign * g[1] * mirror;
      }
      return l == 6 ? region.phase_y.dist_lo(ty) : region.phase_y.dist_hi(ty);
    }
    default:
      throw std::out_of_range("bound index");
  }
}

/// Minimum signed distance over all 8 bounds.
inline double riem_margin(const KeyframeState& k,
                          const RiemannianRegion& region,
                          rom::StanceParity parity) {
  auto r = bound_distances(k, region, parity);
  double m = r[0];
  for (int l = 1; l < kNumBounds; ++l) m = std::min(m, r[l]);
  return m;
}

/// Physical bands the default region is derived from.
struct RegionBands {
  double apex_velocity_lo = 0.1;   // sagittal apex speed [m/s]
  double apex_velocity_hi = 0.9;
  double phase_lo = 0.25;          // keyframe timing, fraction of the step
  double phase_hi = 0.75;
  double apex_offset_lo = 0.01;    // lateral apex distance [m]
  double apex_offset_hi = 0.2;
};

// Region around the nominal gait keyframe. Each physical band maps to a raw
// coordinate band which is then rescaled so that all eight half-widths equal
// the margin unit and the region center scores exactly margin_unit.
inline RiemannianRegion default_region(const rom::ModelParams& params,
                                       const rom::NominalGait& gait,
                                       const RegionBands& bands = {},
                                       double margin_unit = 0.1) {
  double w = params.omega();
  RiemannianRegion region;

  rom::AugmentedState sag0 =
      gait.contact_state(rom::StanceParity::RightStance, params);
  region.sagittal = {sag0.p_com.x(), sag0.v_com.x(), w, 1.0};
  region.sagittal.validate();

  auto sigma_of_apex_speed = [&](double va) {
    return sigma(0.0, va, region.sagittal);
  };
  region.sigma_x = Band::make(sigma_of_apex_speed(bands.apex_velocity_lo),
                              sigma_of_apex_speed(gait.apex_velocity),
                              sigma_of_apex_speed(bands.apex_velocity_hi),
                              margin_unit);

  auto zeta_at_phase = [&](double frac) {
    rom::AxisState s = rom::flow_axis({sag0.p_com.x(), sag0.v_com.x()},
                                      frac * gait.step_duration, w);
    return zeta(s.p, s.v, region.sagittal);
  };
  // zeta decreases along the step and is zero at the apex.
  region.zeta_x = Band::make(zeta_at_phase(bands.phase_hi), 0.0,
                             zeta_at_phase(bands.phase_lo), margin_unit);

  rom::AugmentedState lat0 =
      gait.contact_state(rom::StanceParity::RightStance, params);
  region.lateral = {lat0.p_com.y(), lat0.v_com.y(), w, 1.0};
  region.lateral.validate();

  auto sigma_of_apex_offset = [&](double d) {
    return sigma(d, 0.0, region.lateral);
  };
  region.sigma_y = Band::make(sigma_of_apex_offset(bands.apex_offset_lo),
                              sigma_of_apex_offset(gait.apex_offset),
                              sigma_of_apex_offset(bands.apex_offset_hi),
                              margin_unit);

  region.phase_y = Band::make((bands.phase_lo - 0.5) * gait.step_duration, 0.0,
                              (bands.phase_hi - 0.5) * gait.step_duration,
                              margin_unit);
  region.margin_unit = margin_unit;
  return region;
}

/// One phase-space bound curve for plotting.
struct BoundPolyline {
  std::string label;
  std::vector<Eigen::Vector2d> points;  // (p, v)
};

// Region boundary curves in the (p, v) plane of one axis, clipped to the
// complementary band. Intended for phase-portrait figures.
inline std::vector<BoundPolyline> region_bound_polylines(
    const RiemannianRegion& region, bool sagittal_axis, int samples = 200) {
  std::vector<BoundPolyline> out;
  const ManifoldParams& mp = sagittal_axis ? region.sagittal : region.lateral;
  const Band& sig = sagittal_axis ? region.sigma_x : region.sigma_y;
  const Band& other = sagittal_axis ? region.zeta_x : region.phase_y;
  double w = mp.omega;

  auto in_other_band = [&](double p, double v) {
    try {
      double c = sagittal_axis ? zeta(p, v, mp) : apex_phase(p, v, w);
      return c >= other.lo && c <= other.hi;
    } catch (const OutOfChartError&) {
      return false;
    }
  };
  auto in_sigma_band = [&](double p, double v) {
    double s = sigma(p, v, mp);
    return s >= sig.lo && s <= sig.hi;
  };

  // sigma level sets: flow curves at the band edges, clipped by the phase.
  for (double level : {sig.lo, sig.hi}) {
    BoundPolyline line;
    line.label = (level == sig.lo ? "sigma_lo" : "sigma_hi");
    double e0 = mp.orbital_nominal();
    double e = level * w * w / e0 + e0;
    auto at_tau = [&](double tau) -> Eigen::Vector2d {
      if (e >= 0.0) {  // crossing trajectory (sagittal style)
        double va = std::sqrt(e);
        return {va / w * std::sinh(w * tau), va * std::cosh(w * tau)};
      }
      double d = std::sqrt(-e / (w * w));  // non-crossing (lateral style)
      return {d * std::cosh(w * tau), d * w * std::sinh(w * tau)};
    };
    // shrink [tau_lo, tau_hi] onto the in-band segment by bisection
    double tau_lo = -0.2, tau_hi = 0.2;
    auto inside = [&](double tau) {
      Eigen::Vector2d x = at_tau(tau);
      return in_other_band(x[0], x[1]);
    };
    if (!inside(0.0) && !inside(tau_lo) && !inside(tau_hi)) continue;
    double a = tau_lo, b = tau_hi;
    double step = (tau_hi - tau_lo) / 400.0;
    // walk inward onto the in-band segment, then refine its edges
    while (!inside(a) && a < b) a += step;
    while (!inside(b) && b > a) b -= step;
    auto bisect_edge = [&](double outside_t, double inside_t) {
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (outside_t + inside_t);
        (inside(mid) ? inside_t : outside_t) = mid;
      }
      return inside_t;
    };
    if (a > tau_lo) a = bisect_edge(a - step, a);
    if (b < tau_hi) b = bisect_edge(b + step, b);
    for (int i = 0; i <= samples; ++i) {
      Eigen::Vector2d x = at_tau(a + (b - a) * i / samples);
      line.points.push_back(x);
    }
    out.push_back(std::move(line));
  }

  // phase level sets: rays of constant tau/zeta, clipped by sigma.
  for (double level : {other.lo, other.hi}) {
    BoundPolyline line;
    line.label = (level == other.lo ? "phase_lo" : "phase_hi");
    for (int i = 0; i <= samples; ++i) {
      double e0 = mp.orbital_nominal();
      double sig_i = sig.lo + (sig.hi - sig.lo) * i / samples;
      double e = sig_i * w * w / e0 + e0;
      double p, v;
      if (sagittal_axis) {
        if (e <= 0.0) continue;
        double va = std::sqrt(e);
        // invert zeta along this trajectory by bisection on tau
        double lo_t = -0.2, hi_t = 0.2;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo_t + hi_t);
          double pm = va / w * std::sinh(w * mid);
          double vm = va * std::cosh(w * mid);
          double z = zeta(pm, vm, mp);
          (z > level ? lo_t : hi_t) = mid;  // zeta decreases in tau
        }
        double tau = 0.5 * (lo_t + hi_t);
        p = va / w * std::sinh(w * tau);
        v = va * std::cosh(w * tau);
        // the level set may not intersect this trajectory at all
        if (std::abs(zeta(p, v, mp) - level) >
            1e-6 * std::max(1.0, std::abs(level)))
          continue;
      } else {
        if (e >= 0.0) continue;
        double d = std::sqrt(-e / (w * w));
        p = d * std::cosh(w * level);
        v = d * w * std::sinh(w * level);
      }
      if (in_sigma_band(p, v)) line.points.push_back({p, v});
    }
    if (!line.points.empty()) out.push_back(std::move(line));
  }
  return out;
}

}  // namespace locostl::riemannian
