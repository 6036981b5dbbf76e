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

#ifndef PATHGUIDE_MIDCOURSE_HPP_
#define PATHGUIDE_MIDCOURSE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pathguide/geom.hpp"
#include "pathguide/guidance.hpp"
#include "pathguide/path.hpp"
#include "pathguide/vehicle.hpp"

namespace pathguide {

// Circle tangent to the reference path at its start point, traversed in the
// sense that passes the start point along the start tangent.
struct InitiationCircle {
  Vec2 center;
  double radius = 0.0;
  Sense sense = Sense::kAnticlockwise;

  // Unit direction of travel at `p` (projected radially onto the circle).
  Vec2 tangent_at(const Vec2& p) const { return sign_of(sense) * left_normal(unit(p - center)); }
};

enum class Tangency { kExternal, kInternal, kOnCircle };

// Circle through the vehicle, tangent to its velocity, touching the
// initiation circle at W.
struct ContactSolution {
  Vec2 W;
  double lambda = 0.0;   // radius of the vehicle's tangent circle, m
  double a_const = 0.0;  // signed command along the tangent arc, V^2/lambda
  Sense turn = Sense::kAnticlockwise;
  Tangency tangency = Tangency::kExternal;
  bool feasible = false;  // arrives at W moving in the circle's sense
};

class InfeasibleGeometry : public std::runtime_error {
 public:
  explicit InfeasibleGeometry(const std::string& what) : std::runtime_error(what) {}
};

// Anticlockwise circle first; it wins ties in select_circle.
inline std::pair<InitiationCircle, InitiationCircle> candidate_circles(const ReferencePath& path,
                                                                       double R) {
  if (!(R > 0.0)) throw std::invalid_argument("initiation radius must be positive");
  const PathPoint& s = path.start();
  const Vec2 n = left_normal(s.tangent);
  return {InitiationCircle{s.position + R * n, R, Sense::kAnticlockwise},
          InitiationCircle{s.position - R * n, R, Sense::kClockwise}};
}

inline constexpr double kOnCircleTol = 1e-9;

inline std::vector<ContactSolution> contact_solutions(const Vec2& P, double psi,
                                                      const InitiationCircle& circle,
                                                      double speed) {
  const Vec2 h = heading_vector(psi);
  const Vec2 d = P - circle.center;
  const double R = circle.radius;
  const double dist = norm(d);
  if (dist < R - kOnCircleTol) throw GeometryError("vehicle inside initiation circle");
  if (dot(h, circle.center - P) < -1e-12) throw GeometryError("heading away from circle");

  std::vector<ContactSolution> out;
  if (dist - R <= kOnCircleTol) {
    ContactSolution on;
    on.W = P;
    on.lambda = std::numeric_limits<double>::infinity();
    on.a_const = 0.0;
    on.tangency = Tangency::kOnCircle;
    const double c = cross(d, h);
    on.turn = c >= 0.0 ? Sense::kAnticlockwise : Sense::kClockwise;
    on.feasible = on.turn == circle.sense;
    out.push_back(on);
    return out;
  }

  // Heading line already tangent to the circle: fly straight.
  const double miss = cross(h, circle.center - P);
  if (std::abs(std::abs(miss) - R) <= kOnCircleTol * std::max(1.0, R)) {
    ContactSolution straight;
    straight.W = P + h * dot(circle.center - P, h);
    straight.lambda = std::numeric_limits<double>::infinity();
    straight.a_const = 0.0;
    straight.tangency = Tangency::kExternal;
    straight.turn = miss > 0.0 ? Sense::kAnticlockwise : Sense::kClockwise;
    straight.feasible = dot(circle.tangent_at(straight.W), h) > 0.0;
    out.push_back(straight);
  }

  const double excess = dist * dist - R * R;
  for (const Sense turn : {Sense::kAnticlockwise, Sense::kClockwise}) {
    const double sg = sign_of(turn);
    const Vec2 n = sg * left_normal(h);
    const double dn = dot(d, n);
    auto make = [&](double lambda, Tangency tangency) {
      ContactSolution c;
      const Vec2 q = P + lambda * n;
      c.lambda = lambda;
      c.turn = turn;
      c.tangency = tangency;
      c.a_const = sg * speed * speed / lambda;
      // Externally touching circles roll in opposite senses at the contact.
      const Vec2 towards = tangency == Tangency::kExternal ? q - circle.center : circle.center - q;
      c.W = circle.center + R * unit(towards);
      const double arrival = tangency == Tangency::kExternal ? -sg : sg;
      c.feasible = arrival == sign_of(circle.sense);
      out.push_back(c);
    };
    if (R - dn > 0.0) make(excess / (2.0 * (R - dn)), Tangency::kExternal);
    if (R + dn < 0.0) make(excess / (-2.0 * (R + dn)), Tangency::kInternal);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ContactSolution& a, const ContactSolution& b) {
                     return a.lambda > b.lambda;
                   });
  return out;
}

// Sweeps candidate aim points on the circle and returns the angle (circle
// frame) of the extremum of the signed L1 command with the smaller magnitude.
inline double brute_force_extremum(const Vec2& P, double psi, const InitiationCircle& circle,
                                   int samples) {
  if (samples < 360) throw std::invalid_argument("brute-force sweep needs at least 360 samples");
  const Vec2 h = heading_vector(psi);
  const Vec2 d = P - circle.center;
  if (std::abs(norm(d) - circle.radius) <= kOnCircleTol) return std::atan2(d.y, d.x);

  double best_max = -std::numeric_limits<double>::infinity();
  double best_min = std::numeric_limits<double>::infinity();
  double phi_max = 0.0;
  double phi_min = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double phi = -kPi + 2.0 * kPi * k / samples;
    const Vec2 x = circle.center + circle.radius * Vec2{std::cos(phi), std::sin(phi)};
    const Vec2 los = x - P;
    const double L = norm(los);
    if (L < 1e-12) continue;
    // a / (2 V^2) = sin(eta) / L
    const double k_over = std::sin(signed_angle(h, los)) / L;
    if (k_over > best_max) {
      best_max = k_over;
      phi_max = phi;
    }
    if (k_over < best_min) {
      best_min = k_over;
      phi_min = phi;
    }
  }
  const double amax = std::abs(best_max);
  const double amin = std::abs(best_min);
  if (std::abs(amax - amin) <= 1e-9 * std::max(amax, amin)) return std::max(phi_max, phi_min);
  return amax < amin ? phi_max : phi_min;
}

struct CircleSelection {
  InitiationCircle circle;
  ContactSolution solution;
};

// Exhaustive enumeration over both candidate circles and both tangency
// branches; keeps the feasible solution with the smallest |a_const|.
inline CircleSelection select_circle(const Vec2& P, double psi, double speed,
                                     const std::pair<InitiationCircle, InitiationCircle>& candidates) {
  std::optional<CircleSelection> best;
  std::ostringstream diag;
  for (const InitiationCircle& c : {candidates.first, candidates.second}) {
    std::vector<ContactSolution> sols;
    try {
      sols = contact_solutions(P, psi, c, speed);
    } catch (const GeometryError& e) {
      diag << " [circle (" << c.center.x << ", " << c.center.y << "): " << e.what() << "]";
      continue;
    }
    for (const ContactSolution& s : sols) {
      if (!s.feasible) continue;
      if (!best || std::abs(s.a_const) < std::abs(best->solution.a_const)) best = CircleSelection{c, s};
    }
  }
  if (!best) throw InfeasibleGeometry("no feasible initiation geometry" + diag.str());
  return *best;
}

// L1 command with the contact point as a static aim point; constant
// (V^2/lambda) along the tangent arc.
inline LataxCommand midcourse_command(const VehicleState& state, const ContactSolution& sol) {
  const double L = distance(sol.W, state.pose.position);
  if (L <= 0.0) return {0.0};
  return {latax_l1(state, sol.W, L)};
}

inline double clamp_circle_lookahead(double L1_mid, double radius) {
  return L1_mid >= 2.0 * radius ? 1.8 * radius : L1_mid;
}

// Constant-L1 tracking of the initiation circle with the aim point L1_mid
// ahead on the circle in its traversal sense.
inline LataxCommand circle_follow_command(const VehicleState& state, const InitiationCircle& circle,
                                          double L1_mid) {
  const double R = circle.radius;
  const double L = clamp_circle_lookahead(L1_mid, R);
  const Vec2 p = state.pose.position;
  const Vec2 to_center = circle.center - p;
  const double d = norm(to_center);
  const double sg = sign_of(circle.sense);

  Vec2 target;
  bool found = false;
  if (d > 0.0 && d <= R + L && d >= std::abs(R - L)) {
    const double a = (L * L - R * R + d * d) / (2.0 * d);
    const double hh = std::sqrt(std::max(0.0, L * L - a * a));
    const Vec2 u = to_center / d;
    const Vec2 base = p + a * u;
    const Vec2 candidates[2] = {base + hh * left_normal(u), base - hh * left_normal(u)};
    const Vec2 radial = p - circle.center;
    double best_ahead = std::numeric_limits<double>::infinity();
    for (const Vec2& x : candidates) {
      const double ahead = sg * signed_angle(radial, x - circle.center);
      if (ahead > 0.0 && ahead < best_ahead) {
        best_ahead = ahead;
        target = x;
        found = true;
      }
    }
  }
  if (!found) {
    const Vec2 radial = d > 0.0 ? unit(p - circle.center) : Vec2{1.0, 0.0};
    const double sweep = sg * 2.0 * std::asin(std::min(1.0, L / (2.0 * R)));
    const double c = std::cos(sweep);
    const double s = std::sin(sweep);
    target = circle.center + R * Vec2{c * radial.x - s * radial.y, s * radial.x + c * radial.y};
  }
  const double range = distance(target, p);
  if (range <= 0.0) return {0.0};
  return {latax_l1(state, target, range)};
}

}  // namespace pathguide

#endif  // PATHGUIDE_MIDCOURSE_HPP_
