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

#include "pathguide/optimizer.hpp"

#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "pathguide/metrics.hpp"
#include "pathguide/mission.hpp"

namespace pathguide {
namespace {

VehicleState make_state(Vec2 p, double psi) {
  VehicleState s;
  s.pose = Pose(p, psi);
  s.speed = 5.0;
  return s;
}

TEST(AdaptiveInterval, LargeRadiusUsesDLimit) {
  const ReferencePath p = make_circle_path({0, 0}, 50.0, Sense::kAnticlockwise);
  EXPECT_NEAR(adaptive_interval(make_state({50, 0}, kPi / 2), p, 0.0, 20.0), 4.0, 1e-9);
}

TEST(AdaptiveInterval, SmallRadiusUsesRadius) {
  const ReferencePath p = make_circle_path({0, 0}, 5.0, Sense::kAnticlockwise);
  EXPECT_NEAR(adaptive_interval(make_state({5, 0}, kPi / 2), p, 0.0, 20.0), 1.0, 1e-9);
}

TEST(AdaptiveInterval, StraightSaturates) {
  const ReferencePath p = make_line_path({0, 0}, {1, 0}, 100.0);
  EXPECT_NEAR(adaptive_interval(make_state({10, 1}, 0.0), p, 0.0, 20.0), 4.0, 1e-12);
}

TEST(RolloutCost, ZeroOnAlignedStraightPath) {
  const ReferencePath p = make_line_path({0, 0}, {1, 0}, 200.0);
  for (double k1 : {0.0, 1.0, 5.0}) {
    for (double k2 : {0.0, 3.0, 10.0}) {
      EXPECT_LT(rollout_cost(make_state({10, 0}, 0.0), p, 10.0, {k1, k2, 10.0}, 4.0, 0.01), 1e-9);
    }
  }
}

TEST(RolloutCost, BaselineGainsMatchBaselineLaw) {
  const ReferencePath p = make_sinusoid_path(-15.0, 150.0);
  VehicleState s = make_state({-15, 0}, 39.118 * kPi / 180);
  const double cost = rollout_cost(s, p, 0.0, {1.0, 0.0, 10.0}, 4.0, 0.01);
  double sum = 0.0;
  double s_min = 0.0;
  for (int i = 0; i < 400; ++i) {
    const TrackingStep ts = track_path(s, p, s_min, 10.0, Controller::kBaseline, {});
    sum += ts.projection.distance * ts.projection.distance;
    s_min = ts.s_min;
    s = step(s, ts.command, 0.01);
  }
  EXPECT_NEAR(cost, std::sqrt(sum / 400.0), 1e-12);
}

TEST(Optimizer, DominatesBaselineGains) {
  const ReferencePath sin_path = make_sinusoid_path(-15.0, 150.0);
  const ReferencePath circle = make_circle_path({0, 0}, 20.0, Sense::kAnticlockwise, 0.0, 2.0);
  struct Case {
    const ReferencePath* path;
    VehicleState state;
  };
  for (const Case& c : {Case{&sin_path, make_state({-15, 0}, 0.68)},
                        Case{&circle, make_state({21, 0}, kPi / 2 + 0.2)}}) {
    OptimizerSettings o;
    const GainChoice g = optimize_gains(c.state, *c.path, 0.0, 10.0, 4.0, 0.01, o);
    const double base = rollout_cost(c.state, *c.path, 0.0, {1.0, 0.0, 10.0}, 4.0, 0.01);
    EXPECT_LE(g.cost, base);
    EXPECT_GE(g.k1, 0.0);
    EXPECT_LE(g.k1, o.k_max);
    EXPECT_GE(g.k2, 0.0);
    EXPECT_LE(g.k2, o.k_max);
    EXPECT_FALSE(g.warning);
  }
}

TEST(Optimizer, FlatObjectiveTieBreak) {
  const ReferencePath p = make_line_path({0, 0}, {1, 0}, 200.0);
  const GainChoice g = optimize_gains(make_state({10, 0}, 0.0), p, 10.0, 10.0, 4.0, 0.01, {});
  EXPECT_EQ(g.k1, 0.0);
  EXPECT_EQ(g.k2, 0.0);
}

TEST(Optimizer, ThreadCountDoesNotChangeResult) {
  const ReferencePath p = make_sinusoid_path(-15.0, 150.0);
  const VehicleState s = make_state({-15, 0}, 0.68);
  OptimizerSettings one;
  OptimizerSettings four;
  four.threads = 4;
  const GainChoice a = optimize_gains(s, p, 0.0, 10.0, 4.0, 0.01, one);
  const GainChoice b = optimize_gains(s, p, 0.0, 10.0, 4.0, 0.01, four);
  EXPECT_EQ(a.k1, b.k1);
  EXPECT_EQ(a.k2, b.k2);
  EXPECT_EQ(a.cost, b.cost);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Optimizer, RejectsBadSettings) {
  OptimizerSettings o;
  o.grid = 2;
  EXPECT_THROW(o.validate(), std::invalid_argument);
  o = {};
  o.k_max = 0.0;
  EXPECT_THROW(o.validate(), std::invalid_argument);
}

TEST(Optimizer, OnlineGainsBeatFixedBaselineOverFullRun) {
  const auto p = std::make_shared<const ReferencePath>(make_sinusoid_path(-15.0, 100.0));
  const VehicleState s = make_state({-15, 0}, 39.118 * kPi / 180);
  MissionConfig fixed;
  fixed.fixed_gains = GuidanceGains{1.0, 0.0, 10.0};
  const Summary a = summarize(Mission(p, s, fixed).run());
  const Summary b = summarize(Mission(p, s, MissionConfig{}).run());
  EXPECT_LT(b.d_rms, a.d_rms);
}

}  // namespace
}  // namespace pathguide
