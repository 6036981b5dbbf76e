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

#ifndef PATHGUIDE_PATH_HPP_
#define PATHGUIDE_PATH_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "pathguide/geom.hpp"

namespace pathguide {

// A regular C2 planar curve c(u), u in [u_begin, u_end], with its first two
// derivatives. ReferencePath reparameterizes it by arc length.
struct ParametricCurve {
  std::function<Vec2(double)> position;
  std::function<Vec2(double)> d1;
  std::function<Vec2(double)> d2;
  double u_begin = 0.0;
  double u_end = 1.0;
};

struct PathPoint {
  double s = 0.0;
  Vec2 position;
  Vec2 tangent{1.0, 0.0};
  double curvature = 0.0;  // signed, anticlockwise-positive, 1/m
};

struct Projection {
  PathPoint point;
  double distance = 0.0;
};

enum class LookaheadStatus { kOnPath, kFallback, kEndOfPath };

struct Lookahead {
  PathPoint point;
  LookaheadStatus status = LookaheadStatus::kOnPath;
};

inline constexpr double kMinCurvatureRadius = 1e-3;
inline constexpr double kMaxCurvatureRadius = 1e6;

// Unsigned radius of curvature, clamped to [1e-3, 1e6] m.
inline double curvature_radius(const PathPoint& pp) {
  const double k = std::abs(pp.curvature);
  if (k <= 1.0 / kMaxCurvatureRadius) return kMaxCurvatureRadius;
  return std::clamp(1.0 / k, kMinCurvatureRadius, kMaxCurvatureRadius);
}

// Arc-length parameterized reference path backed by a uniform sample table.
// Immutable after construction; every query is const and thread-safe.
class ReferencePath {
 public:
  static constexpr double kDefaultSpacing = 0.05;
  // Forward extent of the hinted projection search before it starts
  // following the descent.
  static constexpr double kHintWindow = 10.0;
  static constexpr double kHintBacktrack = 1.0;
  static constexpr double kLookaheadTol = 1e-8;

  explicit ReferencePath(ParametricCurve curve, double spacing = kDefaultSpacing)
      : curve_(std::move(curve)) {
    if (!(curve_.u_end > curve_.u_begin)) throw std::invalid_argument("empty path domain");
    if (!(spacing > 0.0)) throw std::invalid_argument("path sample spacing must be positive");
    build_table(spacing);
  }

  double length() const { return length_; }
  double spacing() const { return h_; }
  std::size_t sample_count() const { return u_.size(); }
  std::span<const Vec2> samples() const { return pos_; }
  const PathPoint& start() const { return start_; }
  const PathPoint& end() const { return end_; }

  // Path point at arc length s; s is clamped to [0, length()].
  PathPoint at(double s) const {
    s = std::clamp(s, 0.0, length_);
    const double u = param_at(s);
    const Vec2 d1 = curve_.d1(u);
    const Vec2 d2 = curve_.d2(u);
    const double speed = norm(d1);
    PathPoint pp;
    pp.s = s;
    pp.position = curve_.position(u);
    pp.tangent = d1 / speed;
    pp.curvature = cross(d1, d2) / (speed * speed * speed);
    return pp;
  }

  Vec2 position(double s) const { return curve_.position(param_at(std::clamp(s, 0.0, length_))); }

  // Closest path point. Without a hint the search is global; with a hint it
  // covers [hint - 1 m, hint + window] and keeps following the descent if the
  // minimum sits on the window's far edge.
  Projection project(const Vec2& p, std::optional<double> s_hint = std::nullopt) const {
    const std::size_t n = pos_.size();
    std::size_t lo = 0;
    std::size_t hi = n - 1;
    if (s_hint) {
      lo = index_floor(*s_hint - kHintBacktrack);
      hi = std::min(n - 1, index_ceil(*s_hint + kHintWindow));
    }
    std::size_t best = lo;
    double best_d2 = squared_distance(pos_[lo], p);
    for (std::size_t j = lo + 1; j <= hi; ++j) {
      const double d2 = squared_distance(pos_[j], p);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = j;
      }
    }
    if (s_hint) {
      while (best == hi && hi + 1 < n) {
        ++hi;
        const double d2 = squared_distance(pos_[hi], p);
        if (d2 >= best_d2) break;
        best_d2 = d2;
        best = hi;
      }
    }
    const double a = s_of(best == 0 ? 0 : best - 1);
    const double b = s_of(std::min(best + 1, n - 1));
    auto f = [&](double s) { return squared_distance(position(s), p); };
    const auto [s_star, d2_star] =
        boost::math::tools::brent_find_minima(f, a, b, std::numeric_limits<double>::digits);
    Projection out;
    if (d2_star <= best_d2) {
      out.point = at(s_star);
    } else {
      out.point = at(s_of(best));
    }
    out.distance = distance(out.point.position, p);
    return out;
  }

  // First point with s > s_min at Euclidean distance L1 from p where the path
  // leaves the L1-circle around p.
  Lookahead lookahead_point(const Vec2& p, double s_min, double L1) const {
    if (!(L1 > 0.0)) throw std::invalid_argument("look-ahead distance must be positive");
    s_min = std::clamp(s_min, 0.0, length_);
    const std::size_t n = pos_.size();
    auto f = [&](double s) { return distance(position(s), p) - L1; };

    double s_prev = s_min;
    double f_prev = f(s_min);
    std::size_t j = index_floor(s_min) + 1;
    while (j < n) {
      const double fj = distance(pos_[j], p) - L1;
      if (f_prev < 0.0 && fj >= 0.0) {
        const auto [a, b] = boost::math::tools::bisect(
            f, s_prev, s_of(j),
            [](double lo, double hi) { return hi - lo <= kLookaheadTol; });
        return {at(0.5 * (a + b)), LookaheadStatus::kOnPath};
      }
      s_prev = s_of(j);
      f_prev = fj;
      if (j == n - 1) break;
      // |d(distance)/ds| <= 1, so no crossing lies within |fj| of this sample.
      const auto skip = static_cast<std::size_t>(std::abs(fj) / h_);
      j = std::min(n - 1, j + std::max<std::size_t>(1, skip));
    }
    if (f_prev < 0.0) return {end_, LookaheadStatus::kEndOfPath};
    return {project(p, s_min).point, LookaheadStatus::kFallback};
  }

 private:
  static double squared_distance(const Vec2& a, const Vec2& b) {
    const Vec2 d = a - b;
    return dot(d, d);
  }

  double s_of(std::size_t j) const {
    return j + 1 == u_.size() ? length_ : static_cast<double>(j) * h_;
  }

  std::size_t index_floor(double s) const {
    if (s <= 0.0) return 0;
    return std::min(u_.size() - 1, static_cast<std::size_t>(s / h_));
  }

  std::size_t index_ceil(double s) const {
    if (s <= 0.0) return 0;
    return std::min(u_.size() - 1, static_cast<std::size_t>(std::ceil(s / h_)));
  }

  double speed(double u) const { return norm(curve_.d1(u)); }

  // Cubic Hermite interpolation of u(s) using du/ds = 1/|c'(u)|.
  double param_at(double s) const {
    std::size_t j = std::min(u_.size() - 2, static_cast<std::size_t>(s / h_));
    const double s0 = s_of(j);
    const double hj = s_of(j + 1) - s0;
    const double t = (s - s0) / hj;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * u_[j] + (t3 - 2 * t2 + t) * hj * duds_[j] +
           (-2 * t3 + 3 * t2) * u_[j + 1] + (t3 - t2) * hj * duds_[j + 1];
  }

  // Adaptive over the whole curve; a single 15-point rule on table-sized
  // pieces, where it is already exact to rounding.
  double arc(double a, double b, unsigned max_depth = 0) const {
    auto ds = [this](double u) { return speed(u); };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(ds, a, b, max_depth, 1e-13);
  }

  void build_table(double spacing) {
    const double u0 = curve_.u_begin;
    const double u1 = curve_.u_end;
    const double estimate = arc(u0, u1, 10);
    const std::size_t fine = std::max<std::size_t>(64, static_cast<std::size_t>(2.0 * estimate / spacing));
    std::vector<double> fu(fine + 1);
    std::vector<double> fs(fine + 1, 0.0);
    for (std::size_t k = 0; k <= fine; ++k) fu[k] = u0 + (u1 - u0) * static_cast<double>(k) / fine;
    fu[fine] = u1;
    for (std::size_t k = 1; k <= fine; ++k) fs[k] = fs[k - 1] + arc(fu[k - 1], fu[k]);
    length_ = fs[fine];

    const auto n = static_cast<std::size_t>(std::ceil(length_ / spacing - 1e-9));
    const std::size_t count = std::max<std::size_t>(n, 1) + 1;
    h_ = length_ / static_cast<double>(count - 1);
    u_.assign(count, u0);
    std::size_t k = 0;
    for (std::size_t j = 0; j < count; ++j) {
      if (j + 1 == count) {
        u_[j] = u1;
        break;
      }
      const double target = static_cast<double>(j) * h_;
      while (k + 1 < fine && fs[k + 1] <= target) ++k;
      double u = fu[k] + (target - fs[k]) / speed(fu[k]);
      u = std::clamp(u, fu[k], fu[k + 1]);
      for (int it = 0; it < 6; ++it) {
        const double residual = fs[k] + arc(fu[k], u) - target;
        const double step = residual / speed(u);
        u = std::clamp(u - step, fu[k], fu[k + 1]);
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(u))) break;
      }
      u_[j] = u;
    }
    duds_.resize(count);
    pos_.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
      duds_[j] = 1.0 / speed(u_[j]);
      pos_[j] = curve_.position(u_[j]);
    }
    start_ = at(0.0);
    end_ = at(length_);
  }

  ParametricCurve curve_;
  double length_ = 0.0;
  double h_ = kDefaultSpacing;
  std::vector<double> u_;
  std::vector<double> duds_;
  std::vector<Vec2> pos_;
  PathPoint start_;
  PathPoint end_;
};

// y = 10 sin(0.078 x) + 20 cos(0.082 x) for x in [x_lo, x_hi].
inline ReferencePath make_sinusoid_path(double x_lo, double x_hi,
                                        double spacing = ReferencePath::kDefaultSpacing) {
  if (!(x_lo < x_hi)) throw std::invalid_argument("empty path domain");
  ParametricCurve c;
  c.position = [](double x) {
    return Vec2{x, 10.0 * std::sin(0.078 * x) + 20.0 * std::cos(0.082 * x)};
  };
  c.d1 = [](double x) {
    return Vec2{1.0, 0.78 * std::cos(0.078 * x) - 1.64 * std::sin(0.082 * x)};
  };
  c.d2 = [](double x) {
    return Vec2{0.0, -0.06084 * std::sin(0.078 * x) - 0.13448 * std::cos(0.082 * x)};
  };
  c.u_begin = x_lo;
  c.u_end = x_hi;
  return ReferencePath(std::move(c), spacing);
}

enum class Sense { kClockwise = -1, kAnticlockwise = 1 };

inline double sign_of(Sense s) { return s == Sense::kAnticlockwise ? 1.0 : -1.0; }

// Circle of the given radius traversed `turns` times from `start_angle`.
inline ReferencePath make_circle_path(Vec2 center, double radius, Sense sense,
                                      double start_angle = 0.0, double turns = 1.0,
                                      double spacing = ReferencePath::kDefaultSpacing) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
  if (!(turns > 0.0)) throw std::invalid_argument("circle turns must be positive");
  const double sg = sign_of(sense);
  ParametricCurve c;
  c.position = [=](double u) {
    const double a = start_angle + sg * u;
    return center + radius * Vec2{std::cos(a), std::sin(a)};
  };
  c.d1 = [=](double u) {
    const double a = start_angle + sg * u;
    return sg * radius * Vec2{-std::sin(a), std::cos(a)};
  };
  c.d2 = [=](double u) {
    const double a = start_angle + sg * u;
    return -radius * Vec2{std::cos(a), std::sin(a)};
  };
  c.u_begin = 0.0;
  c.u_end = 2.0 * kPi * turns;
  return ReferencePath(std::move(c), spacing);
}

inline ReferencePath make_line_path(Vec2 origin, Vec2 direction, double length = 1000.0,
                                    double spacing = ReferencePath::kDefaultSpacing) {
  if (!(length > 0.0)) throw std::invalid_argument("line length must be positive");
  const Vec2 d = unit(direction);
  ParametricCurve c;
  c.position = [=](double u) { return origin + d * u; };
  c.d1 = [=](double) { return d; };
  c.d2 = [](double) { return Vec2{}; };
  c.u_begin = 0.0;
  c.u_end = length;
  return ReferencePath(std::move(c), spacing);
}

namespace detail {

// Natural cubic spline coefficients (second derivatives) for knots t, values y.
inline std::vector<double> natural_spline_moments(const std::vector<double>& t,
                                                  const std::vector<double>& y) {
  const std::size_t n = t.size();
  std::vector<double> m(n, 0.0);
  if (n < 3) return m;
  std::vector<double> c(n, 0.0);
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    const double a = h0 / 6.0;
    const double b = (h0 + h1) / 3.0;
    const double cc = h1 / 6.0;
    const double r = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    const double denom = b - a * c[i - 1];
    c[i] = cc / denom;
    d[i] = (r - a * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m[i] = d[i] - c[i] * m[i + 1];
    if (i == 1) break;
  }
  return m;
}

}  // namespace detail

// Natural parametric cubic spline through the samples, chord-length knots.
inline ReferencePath make_polyline_path(std::span<const Vec2> points,
                                        double spacing = ReferencePath::kDefaultSpacing) {
  if (points.size() < 2) throw std::invalid_argument("polyline needs at least two points");
  std::vector<double> t{0.0};
  std::vector<double> xs{points[0].x};
  std::vector<double> ys{points[0].y};
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double chord = distance(points[i], points[i - 1]);
    if (!(chord > 0.0)) throw std::invalid_argument("polyline has repeated points");
    t.push_back(t.back() + chord);
    xs.push_back(points[i].x);
    ys.push_back(points[i].y);
  }
  struct Spline {
    std::vector<double> t, x, y, mx, my;

    std::pair<std::size_t, double> locate(double u) const {
      const auto it = std::upper_bound(t.begin(), t.end(), u);
      std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
      i = std::min(i, t.size() - 2);
      return {i, u - t[i]};
    }
    // Returns value, first and second derivative of one coordinate.
    std::array<double, 3> eval(const std::vector<double>& v, const std::vector<double>& m,
                               double u) const {
      const auto [i, dx] = locate(u);
      const double h = t[i + 1] - t[i];
      const double a = (t[i + 1] - u) / h;
      const double b = dx / h;
      const double val = a * v[i] + b * v[i + 1] +
                         ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
      const double d1 = (v[i + 1] - v[i]) / h - (3 * a * a - 1) * h / 6.0 * m[i] +
                        (3 * b * b - 1) * h / 6.0 * m[i + 1];
      const double d2 = a * m[i] + b * m[i + 1];
      return {val, d1, d2};
    }
  };
  auto sp = std::make_shared<Spline>();
  sp->t = t;
  sp->x = xs;
  sp->y = ys;
  sp->mx = detail::natural_spline_moments(t, xs);
  sp->my = detail::natural_spline_moments(t, ys);
  ParametricCurve c;
  c.position = [sp](double u) {
    return Vec2{sp->eval(sp->x, sp->mx, u)[0], sp->eval(sp->y, sp->my, u)[0]};
  };
  c.d1 = [sp](double u) {
    return Vec2{sp->eval(sp->x, sp->mx, u)[1], sp->eval(sp->y, sp->my, u)[1]};
  };
  c.d2 = [sp](double u) {
    return Vec2{sp->eval(sp->x, sp->mx, u)[2], sp->eval(sp->y, sp->my, u)[2]};
  };
  c.u_begin = 0.0;
  c.u_end = t.back();
  return ReferencePath(std::move(c), spacing);
}

}  // namespace pathguide

#endif  // PATHGUIDE_PATH_HPP_
