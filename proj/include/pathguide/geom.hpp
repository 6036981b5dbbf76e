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

#ifndef PATHGUIDE_GEOM_HPP_
#define PATHGUIDE_GEOM_HPP_

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pathguide {

inline constexpr double kPi = std::numbers::pi;

// Raised for degenerate geometric input (zero directions, parallel lines,
// points inside circles, ...).
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double k) {
    x *= k;
    y *= k;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator*(Vec2 a, double k) { return a *= k; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return a *= k; }
  friend constexpr Vec2 operator/(Vec2 a, double k) { return a *= (1.0 / k); }
  friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

// Rotates by +90 degrees (anticlockwise).
constexpr Vec2 left_normal(const Vec2& a) { return {-a.y, a.x}; }

inline Vec2 unit(const Vec2& a) {
  const double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n)) throw GeometryError("degenerate direction");
  return a / n;
}

inline Vec2 heading_vector(double psi) { return {std::cos(psi), std::sin(psi)}; }

// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

struct Pose {
  Vec2 position;
  double heading = 0.0;  // radians, anticlockwise from +x, in (-pi, pi]

  Pose() = default;
  Pose(Vec2 p, double psi) : position(p), heading(normalize_angle(psi)) {}

  Vec2 direction() const { return heading_vector(heading); }
};

// Anticlockwise-positive angle from direction `from` to direction `to`.
inline double signed_angle(const Vec2& from, const Vec2& to) {
  if (norm(from) == 0.0 || norm(to) == 0.0) throw GeometryError("degenerate direction");
  const double a = std::atan2(cross(from, to), dot(from, to));
  return a == -kPi ? kPi : a;
}

inline constexpr double kParallelEps = 1e-9;

// Intersection of the infinite lines p1 + t*d1 and p2 + u*d2.
inline Vec2 line_intersection(const Vec2& p1, const Vec2& d1, const Vec2& p2, const Vec2& d2) {
  const Vec2 u1 = unit(d1);
  const Vec2 u2 = unit(d2);
  const double c = cross(u1, u2);
  if (std::abs(c) < kParallelEps) throw GeometryError("parallel lines");
  const double t = cross(p2 - p1, u2) / c;
  return p1 + u1 * t;
}

// Distance from q to the infinite line through p along d.
inline double line_residual(const Vec2& q, const Vec2& p, const Vec2& d) {
  return std::abs(cross(unit(d), q - p));
}

}  // namespace pathguide

#endif  // PATHGUIDE_GEOM_HPP_
