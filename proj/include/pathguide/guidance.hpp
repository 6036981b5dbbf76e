/*
 * Copyright 2026 The pathguide Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PATHGUIDE_GUIDANCE_HPP_
#define PATHGUIDE_GUIDANCE_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pathguide/geom.hpp"
#include "pathguide/path.hpp"
#include "pathguide/vehicle.hpp"

namespace pathguide {

struct GuidanceGains {
  double k1 = 1.0;
  double k2 = 0.0;
  double L1 = 10.0;  // m
};

// Angle from the velocity vector to the line of sight towards `target`.
inline double eta(const VehicleState& state, const Vec2& target) {
  const Vec2 los = target - state.pose.position;
  if (norm(los) == 0.0) throw GeometryError("zero LOS");
  return signed_angle(state.pose.direction(), los);
}

// a = 2 V^2 sin(eta) / L.
inline double l1_latax(double speed, double eta_rad, double L) {
  return 2.0 * speed * speed * std::sin(eta_rad) / L;
}

inline double latax_l1(const VehicleState& state, const Vec2& target, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("look-ahead distance must be positive");
  return l1_latax(state.speed, eta(state, target), L);
}

// Distance used in the look-ahead law: the nominal L1 when the target is a true
// L1-intersection, otherwise the actual range to the substitute target.
inline double effective_lookahead_distance(const VehicleState& state, const Lookahead& la,
                                           double L1) {
  if (la.status == LookaheadStatus::kOnPath) return L1;
  return distance(la.point.position, state.pose.position);
}

struct BaselineOutput {
  LataxCommand command;
  Lookahead lookahead;
};

// Constant-L1 guidance towards the forward look-ahead point.
inline BaselineOutput baseline_step(const VehicleState& state, const ReferencePath& path,
                                    double s_min, double L1) {
  BaselineOutput out;
  out.lookahead = path.lookahead_point(state.pose.position, s_min, L1);
  const double L = effective_lookahead_distance(state, out.lookahead, L1);
  out.command.value = L > 0.0 ? latax_l1(state, out.lookahead.point.position, L) : 0.0;
  return out;
}

// Look-ahead point, corrector point and the derived blend quantities.
//   p1   vehicle                 proj  projection of p1 on the path
//   p2   look-ahead point        p3    heading ray meets the normal line at p2
//   p4   path tangent at proj meets the line through p2 normal to the heading
struct CorrectorGeometry {
  Vec2 p1;
  PathPoint proj;
  PathPoint p2;
  Vec2 p3;
  Vec2 p4;
  double L1 = 0.0;
  double Lc = 0.0;
  double l23 = 0.0;
  double l43 = 0.0;
  double eta12 = 0.0;
  double eta14 = 0.0;
  double R_L1 = 0.0;
  double v_l = 0.0;
  double v_m = 0.0;
  LookaheadStatus lookahead_status = LookaheadStatus::kOnPath;
  bool fallback = false;  // corrector degenerated to the look-ahead point
};

inline constexpr double kMinCosBeta = 0.1;
inline constexpr double kMaxLookaheadSpeedRatio = 5.0;

// Speed of the look-ahead point along the path that keeps |p2 - p1| constant:
// v_l cos(beta) = V cos(eta12), beta between the path tangent at p2 and the LOS.
inline double lookahead_speed(const VehicleState& state, const CorrectorGeometry& geom) {
  const double v = state.speed;
  const Vec2 los = geom.p2.position - geom.p1;
  if (norm(los) == 0.0) return v;
  double cos_beta = dot(geom.p2.tangent, unit(los));
  const double sign = cos_beta < 0.0 ? -1.0 : 1.0;
  cos_beta = sign * std::max(std::abs(cos_beta), kMinCosBeta);
  const double vl = v * std::cos(geom.eta12) / cos_beta;
  return std::clamp(vl, 0.0, kMaxLookaheadSpeedRatio * v);
}

inline CorrectorGeometry corrector_geometry(const VehicleState& state, const ReferencePath& path,
                                            double s_min, double L1,
                                            const Projection* known_projection = nullptr) {
  CorrectorGeometry g;
  g.p1 = state.pose.position;
  const Vec2 heading = state.pose.direction();
  g.proj = known_projection ? known_projection->point : path.project(g.p1, s_min).point;
  const Lookahead la = path.lookahead_point(g.p1, s_min, L1);
  g.p2 = la.point;
  g.lookahead_status = la.status;
  g.L1 = effective_lookahead_distance(state, la, L1);

  g.p3 = g.p1 + heading * dot(g.p2.position - g.p1, heading);
  const Vec2 normal_dir = left_normal(heading);
  if (std::abs(cross(g.proj.tangent, normal_dir)) < kParallelEps) {
    g.p4 = g.p2.position;
    g.fallback = true;
  } else {
    g.p4 = line_intersection(g.proj.position, g.proj.tangent, g.p2.position, normal_dir);
  }
  g.Lc = distance(g.p4, g.p1);
  g.l23 = distance(g.p2.position, g.p3);
  g.l43 = distance(g.p4, g.p3);
  g.eta12 = g.L1 > 0.0 ? eta(state, g.p2.position) : 0.0;
  g.eta14 = g.Lc > 0.0 ? eta(state, g.p4) : 0.0;
  g.R_L1 = curvature_radius(g.p2);
  g.v_l = lookahead_speed(state, g);
  g.v_m = 0.5 * (state.speed + g.v_l);
  return g;
}

struct BlendWeights {
  double w1 = 0.0;
  double w2 = 0.0;
};

// w1 = k1 R_L1 / (1 + l23), w2 = k2 v_m / (R_L1 (1 + l43)).
inline BlendWeights blend_weights(double k1, double k2, double R_L1, double l23, double l43,
                                  double v_m) {
  return {k1 * R_L1 / (1.0 + l23), k2 * v_m / (R_L1 * (1.0 + l43))};
}

inline constexpr double kMinCorrectorDistance = 0.1;
inline constexpr double kMinWeightSum = 1e-12;

inline LataxCommand blended_command(const VehicleState& state, const CorrectorGeometry& geom,
                                    const GuidanceGains& gains) {
  const double a12 = geom.L1 > 0.0 ? l1_latax(state.speed, geom.eta12, geom.L1) : 0.0;
  const double a14 =
      l1_latax(state.speed, geom.eta14, std::max(geom.Lc, kMinCorrectorDistance));
  const BlendWeights w =
      blend_weights(gains.k1, gains.k2, geom.R_L1, geom.l23, geom.l43, geom.v_m);
  // Single-term blends return the term itself so that (k1, k2) = (1, 0)
  // reproduces the constant-L1 law bit for bit.
  if (w.w1 + w.w2 < kMinWeightSum || w.w2 == 0.0) return {a12};
  if (w.w1 == 0.0) return {a14};
  return {(w.w1 * a12 + w.w2 * a14) / (w.w1 + w.w2)};
}

}  // namespace pathguide

#endif  // PATHGUIDE_GUIDANCE_HPP_
