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

#include "pathguide/path.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace pathguide {
namespace {

double sinusoid_y(double x) { return 10.0 * std::sin(0.078 * x) + 20.0 * std::cos(0.082 * x); }

TEST(Sinusoid, StartsAtExpectedPoint) {
  const ReferencePath p = make_sinusoid_path(0.0, 150.0);
  EXPECT_NEAR(p.at(0.0).position.x, 0.0, 1e-12);
  EXPECT_NEAR(p.at(0.0).position.y, 20.0, 1e-12);
}

TEST(Sinusoid, StartHeadingMatchesFiniteDifference) {
  const ReferencePath p = make_sinusoid_path(0.0, 150.0);
  const double h = 1e-5;
  const double slope = (sinusoid_y(h) - sinusoid_y(-h)) / (2 * h);
  const Vec2 t = p.start().tangent;
  EXPECT_NEAR(std::atan2(t.y, t.x), std::atan(slope), 1e-9);
  EXPECT_NEAR(std::atan2(t.y, t.x) * 180.0 / kPi, 37.95, 0.01);
}

TEST(Sinusoid, StartRadiusMatchesFiniteDifference) {
  const ReferencePath p = make_sinusoid_path(0.0, 150.0);
  const double h = 1e-4;
  const double y1 = (sinusoid_y(h) - sinusoid_y(-h)) / (2 * h);
  const double y2 = (sinusoid_y(h) - 2 * sinusoid_y(0) + sinusoid_y(-h)) / (h * h);
  const double r = std::pow(1 + y1 * y1, 1.5) / std::abs(y2);
  EXPECT_NEAR(curvature_radius(p.start()), r, 1e-4 * r);
  EXPECT_NEAR(curvature_radius(p.start()), 15.17, 0.01);
  EXPECT_LT(p.start().curvature, 0.0);  // turning clockwise
}

TEST(Sinusoid, DomainSetsEndPoints) {
  const ReferencePath p = make_sinusoid_path(-15.0, 100.0);
  EXPECT_NEAR(p.start().position.x, -15.0, 1e-12);
  EXPECT_NEAR(p.end().position.x, 100.0, 1e-9);
  EXPECT_NEAR(p.end().position.y, sinusoid_y(100.0), 1e-9);
}

TEST(ArcLength, UnitSpeedParameterization) {
  const ReferencePath p = make_sinusoid_path(0.0, 150.0);
  const double h = 1e-3;
  for (double s = 0.5; s < p.length() - 0.5; s += 3.7) {
    const double ds = distance(p.position(s + h), p.position(s - h)) / (2 * h);
    EXPECT_NEAR(ds, 1.0, 1e-4) << "s=" << s;
  }
}

TEST(ArcLength, ChordNeverExceedsArc) {
  const ReferencePath p = make_sinusoid_path(0.0, 150.0);
  for (double a = 0.0; a < p.length(); a += 7.3) {
    for (double b = a; b < p.length(); b += 11.1) {
      EXPECT_LE(distance(p.position(a), p.position(b)), (b - a) + 1e-9);
    }
  }
}

TEST(ArcLength, LineLengthExact) {
  const ReferencePath p = make_line_path({1, 2}, {3, 4}, 250.0);
  EXPECT_NEAR(p.length(), 250.0, 1e-9);
  EXPECT_NEAR(p.position(50.0).x, 1 + 30.0, 1e-9);
  EXPECT_NEAR(p.position(50.0).y, 2 + 40.0, 1e-9);
}

TEST(Curvature, CircleRadiusAcrossScales) {
  for (double r : {1.0, 3.0, 10.0, 100.0, 1000.0}) {
    const ReferencePath p = make_circle_path({0, 0}, r, Sense::kAnticlockwise);
    EXPECT_NEAR(p.length(), 2 * kPi * r, 1e-8 * r);
    for (double f : {0.1, 0.4, 0.77}) {
      EXPECT_NEAR(curvature_radius(p.at(f * p.length())), r, 1e-6 * r);
    }
  }
}

TEST(Curvature, StraightLineClamped) {
  const ReferencePath p = make_line_path({0, 0}, {1, 0});
  EXPECT_EQ(curvature_radius(p.at(3.0)), kMaxCurvatureRadius);
}

TEST(Curvature, ClockwiseCircleNegative) {
  const ReferencePath p = make_circle_path({0, 0}, 10.0, Sense::kClockwise);
  EXPECT_NEAR(p.at(5.0).curvature, -0.1, 1e-9);
}

TEST(Project, LinePerpendicularFoot) {
  const ReferencePath p = make_line_path({-100, 0}, {1, 0}, 200.0);
  const Projection pr = p.project({3, 4});
  EXPECT_NEAR(pr.point.position.x, 3.0, 1e-9);
  EXPECT_NEAR(pr.point.position.y, 0.0, 1e-9);
  EXPECT_NEAR(pr.distance, 4.0, 1e-9);
}

TEST(Project, CircleRadial) {
  const ReferencePath p = make_circle_path({0, 0}, 10.0, Sense::kAnticlockwise, 0.5);
  const Projection pr = p.project({20, 0});
  EXPECT_NEAR(pr.point.position.x, 10.0, 1e-7);
  EXPECT_NEAR(pr.point.position.y, 0.0, 1e-7);
  EXPECT_NEAR(pr.distance, 10.0, 1e-9);
}

TEST(Project, PointOnPathIsFixed) {
  const ReferencePath p = make_sinusoid_path(0.0, 150.0);
  for (double s : {0.0, 12.3, 77.7, 150.0}) {
    const Vec2 q = p.position(s);
    const Projection pr = p.project(q);
    EXPECT_LT(pr.distance, 1e-7);
    EXPECT_NEAR(pr.point.s, s, 1e-6);
  }
}

TEST(Project, Idempotent) {
  const ReferencePath p = make_sinusoid_path(0.0, 150.0);
  for (const Vec2 q : {Vec2{10, 30}, Vec2{55, -4}, Vec2{90, 20}}) {
    const Projection a = p.project(q);
    const Projection b = p.project(a.point.position);
    EXPECT_NEAR(a.point.s, b.point.s, 1e-6);
    EXPECT_LT(b.distance, 1e-7);
  }
}

TEST(Project, ResidualOrthogonalToTangent) {
  const ReferencePath p = make_sinusoid_path(0.0, 150.0);
  const Vec2 q{40, 10};
  const Projection pr = p.project(q);
  EXPECT_LT(std::abs(dot(q - pr.point.position, pr.point.tangent)), 1e-6);
}

TEST(Project, HintMatchesGlobalNearby) {
  const ReferencePath p = make_sinusoid_path(0.0, 150.0);
  const PathPoint pp = p.at(60.0);
  const Vec2 q = pp.position + 2.0 * left_normal(pp.tangent);
  EXPECT_NEAR(p.project(q, 57.0).point.s, p.project(q).point.s, 1e-9);
}

TEST(Lookahead, LinePythagoras) {
  const ReferencePath p = make_line_path({0, 0}, {1, 0}, 100.0);
  const Lookahead la = p.lookahead_point({0, 6}, 0.0, 10.0);
  EXPECT_EQ(la.status, LookaheadStatus::kOnPath);
  EXPECT_NEAR(la.point.position.x, 8.0, 1e-7);
  EXPECT_NEAR(la.point.position.y, 0.0, 1e-12);
}

TEST(Lookahead, CircleSixtyDegreesAhead) {
  const ReferencePath p = make_circle_path({0, 0}, 10.0, Sense::kAnticlockwise);
  const Lookahead la = p.lookahead_point({10, 0}, 0.0, 10.0);
  EXPECT_EQ(la.status, LookaheadStatus::kOnPath);
  // chord 2 R sin(d/2) = L1 -> d = 60 deg -> arc length 10 pi / 3
  EXPECT_NEAR(la.point.s, 10.0 * kPi / 3.0, 1e-6);
  EXPECT_NEAR(la.point.position.x, 5.0, 1e-6);
  EXPECT_NEAR(la.point.position.y, 8.660254, 1e-6);
  EXPECT_NEAR(distance(la.point.position, {10, 0}), 10.0, 1e-7);
}

TEST(Lookahead, FarVehicleFallsBackToProjection) {
  const ReferencePath p = make_line_path({0, 0}, {1, 0}, 100.0);
  const Lookahead la = p.lookahead_point({30, 50}, 0.0, 10.0);
  EXPECT_EQ(la.status, LookaheadStatus::kFallback);
  EXPECT_NEAR(la.point.position.x, 30.0, 1e-7);
}

TEST(Lookahead, EndOfPathInsideCircle) {
  const ReferencePath p = make_line_path({0, 0}, {1, 0}, 100.0);
  const Lookahead la = p.lookahead_point({95, 1}, 90.0, 10.0);
  EXPECT_EQ(la.status, LookaheadStatus::kEndOfPath);
  EXPECT_NEAR(la.point.s, 100.0, 1e-9);
}

TEST(Lookahead, RespectsSMin) {
  const ReferencePath p = make_circle_path({0, 0}, 10.0, Sense::kAnticlockwise, 0.0, 2.0);
  const Lookahead a = p.lookahead_point({10, 0}, 0.0, 10.0);
  const Lookahead b = p.lookahead_point({10, 0}, 2 * kPi * 10.0, 10.0);
  EXPECT_NEAR(b.point.s - a.point.s, 2 * kPi * 10.0, 1e-5);
}

TEST(Polyline, InterpolatesSamples) {
  std::vector<Vec2> pts;
  for (int i = 0; i <= 30; ++i) pts.push_back({2.0 * i, sinusoid_y(2.0 * i)});
  const ReferencePath p = make_polyline_path(pts);
  for (const Vec2& q : pts) EXPECT_LT(p.project(q).distance, 1e-6);
  EXPECT_NEAR(curvature_radius(p.at(30.0)), curvature_radius(make_sinusoid_path(0, 60).project(p.position(30.0)).point), 1.0);
}

TEST(Polyline, RejectsDegenerateInput) {
  const std::vector<Vec2> one{{0, 0}};
  EXPECT_THROW(make_polyline_path(one), std::invalid_argument);
  const std::vector<Vec2> rep{{0, 0}, {0, 0}, {1, 1}};
  EXPECT_THROW(make_polyline_path(rep), std::invalid_argument);
}

}  // namespace
}  // namespace pathguide
