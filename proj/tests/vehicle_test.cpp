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

#include "pathguide/vehicle.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

namespace pathguide {
namespace {

VehicleState at_origin(double psi = 0.0, double v = 5.0) {
  VehicleState s;
  s.pose = Pose({0, 0}, psi);
  s.speed = v;
  return s;
}

// Closed-form constant-rate turn.
Vec2 exact_turn(const VehicleState& s0, double a, double t) {
  const double w = a / s0.speed;
  const double r = s0.speed / w;
  const double p = s0.pose.heading;
  return s0.pose.position + r * Vec2{std::sin(p + w * t) - std::sin(p), -std::cos(p + w * t) + std::cos(p)};
}

double turn_error(double dt) {
  VehicleState s = at_origin(0.3);
  const VehicleState s0 = s;
  const double a = 2.0;
  const int n = static_cast<int>(std::lround(6.0 / dt));
  for (int i = 0; i < n; ++i) s = step(s, {a}, dt);
  return distance(s.pose.position, exact_turn(s0, a, n * dt));
}

TEST(Step, StraightFlight) {
  const VehicleState s = step(at_origin(), {0.0}, 1.0);
  EXPECT_NEAR(s.pose.position.x, 5.0, 1e-15);
  EXPECT_NEAR(s.pose.position.y, 0.0, 1e-15);
  EXPECT_EQ(s.pose.heading, 0.0);
  EXPECT_EQ(s.time, 1.0);
}

TEST(Step, HalfTurnAtUnitRate) {
  VehicleState s = at_origin();
  const int n = 1000;
  for (int i = 0; i < n; ++i) s = step(s, {5.0}, kPi / n);
  EXPECT_NEAR(std::abs(s.pose.heading), kPi, 1e-6);
  EXPECT_NEAR(s.pose.position.x, 0.0, 1e-6);
  EXPECT_NEAR(s.pose.position.y, 10.0, 1e-6);
}

TEST(Step, HeldTurnStaysOnCircle) {
  const double R = 10.0;
  VehicleState s = at_origin();
  const Vec2 center{0.0, R};
  const double period = 2 * kPi * R / s.speed;
  double worst = 0.0;
  for (int i = 0; i < static_cast<int>(period / 0.01); ++i) {
    s = step(s, {s.speed * s.speed / R}, 0.01);
    worst = std::max(worst, std::abs(distance(s.pose.position, center) - R));
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(Step, FourthOrderConvergence) {
  const double e1 = turn_error(0.2);
  const double e2 = turn_error(0.1);
  EXPECT_NEAR(e1 / e2, 16.0, 1.6);
}

TEST(Step, LataxLimit) {
  StepOptions o;
  o.max_latax = 1.0;
  const VehicleState a = step(at_origin(), {100.0}, 0.1, o);
  const VehicleState b = step(at_origin(), {1.0}, 0.1);
  EXPECT_EQ(a.pose.heading, b.pose.heading);
}

TEST(Step, RejectsInvalidInput) {
  EXPECT_THROW(step(at_origin(), {std::numeric_limits<double>::quiet_NaN()}, 0.1), std::invalid_argument);
  EXPECT_THROW(step(at_origin(), {0.0}, 0.0), std::invalid_argument);
  EXPECT_THROW(step(at_origin(0.0, 0.0), {0.0}, 0.1), std::invalid_argument);
}

}  // namespace
}  // namespace pathguide
