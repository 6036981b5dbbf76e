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

#include "pathguide/metrics.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace pathguide {
namespace {

VehicleState make_state(Vec2 p) {
  VehicleState s;
  s.pose = Pose(p, 0.0);
  return s;
}

TEST(CrossTrack, OnPathIsZero) {
  const ReferencePath p = make_sinusoid_path(0.0, 150.0);
  EXPECT_LT(cross_track_error(make_state(p.position(33.0)), p, Phase::kCloseRange), 1e-7);
}

TEST(CrossTrack, LineOffset) {
  const ReferencePath p = make_line_path({-50, 0}, {1, 0}, 100.0);
  EXPECT_NEAR(cross_track_error(make_state({7, -2}), p, Phase::kCloseRange), 2.0, 1e-9);
}

TEST(CrossTrack, MidcourseUsesStartDistance) {
  const ReferencePath p = make_line_path({0, 0}, {1, 0}, 100.0);
  EXPECT_NEAR(cross_track_error(make_state({30, 0}), p, Phase::kMidcourse), 30.0, 1e-12);
}

RunRecord constant_run(double a, double cte, int n, Phase phase = Phase::kCloseRange) {
  RunRecord r;
  for (int i = 0; i < n; ++i) {
    Sample s;
    s.t = 0.01 * i;
    s.a_cmd = a;
    s.cte = cte;
    s.phase = phase;
    r.samples.push_back(s);
  }
  return r;
}

TEST(Summarize, ConstantSignals) {
  const Summary s = summarize(constant_run(2.0, 1.0, 37));
  EXPECT_NEAR(s.a_rms, 2.0, 1e-12);
  EXPECT_NEAR(s.d_rms, 1.0, 1e-12);
  EXPECT_EQ(s.a_max, 2.0);
  EXPECT_EQ(s.a_peak, 2.0);
  EXPECT_EQ(s.samples, 37u);
}

TEST(Summarize, PeakIsSignedMaximum) {
  RunRecord r = constant_run(-3.0, 0.0, 3);
  r.samples[1].a_cmd = 1.5;
  const Summary s = summarize(r);
  EXPECT_EQ(s.a_max, 3.0);
  EXPECT_EQ(s.a_peak, 1.5);
}

TEST(Summarize, FiltersByPhase) {
  RunRecord r = constant_run(1.0, 1.0, 4, Phase::kMidcourse);
  const RunRecord close = constant_run(3.0, 0.5, 2);
  r.samples.insert(r.samples.end(), close.samples.begin(), close.samples.end());
  EXPECT_EQ(summarize(r).samples, 2u);
  EXPECT_NEAR(summarize(r).a_rms, 3.0, 1e-12);
  EXPECT_EQ(summarize(r, std::nullopt).samples, 6u);
}

TEST(Summarize, EmptyRunThrows) {
  try {
    summarize(RunRecord{});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "empty run");
  }
  EXPECT_THROW(summarize(constant_run(1, 1, 3, Phase::kMidcourse)), std::invalid_argument);
}

TEST(Improvements, TableRowValues) {
  EXPECT_NEAR(relative_improvement(0.632, 0.473), 25.158, 5e-4);
  EXPECT_NEAR(relative_improvement(1.330, 1.205), 9.398, 5e-4);
}

TEST(Improvements, IdenticalRunsAreZero) {
  const RunRecord r = constant_run(1.2, 0.7, 10);
  const Improvements i = improvements(r, r);
  EXPECT_EQ(i.cte_rms, 0.0);
  EXPECT_EQ(i.ae_rms, 0.0);
  EXPECT_EQ(i.a_peak, 0.0);
}

TEST(Improvements, NegativeWhenProposedLarger) {
  Summary base;
  base.a_rms = base.d_rms = base.a_peak = 2.0;
  Summary prop = base;
  prop.a_peak = 2.2;
  EXPECT_NEAR(improvements(base, prop).a_peak, -10.0, 1e-12);
}

TEST(Improvements, SignAntisymmetry) {
  for (double a : {0.5, 1.0, 3.0}) {
    for (double b : {0.4, 1.0, 2.5}) {
      const double ab = relative_improvement(a, b);
      const double ba = relative_improvement(b, a);
      EXPECT_EQ(ab > 0, ba < 0);
      EXPECT_EQ(ab == 0, ba == 0);
    }
  }
}

TEST(Improvements, ZeroDenominatorThrows) {
  EXPECT_THROW(relative_improvement(0.0, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace pathguide
