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

#ifndef PATHGUIDE_METRICS_HPP_
#define PATHGUIDE_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "pathguide/path.hpp"
#include "pathguide/vehicle.hpp"

namespace pathguide {

enum class Phase { kMidcourse = 0, kCircleFollow = 1, kCloseRange = 2, kDone = 3 };

inline std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::kMidcourse: return "midcourse";
    case Phase::kCircleFollow: return "circle_follow";
    case Phase::kCloseRange: return "close_range";
    case Phase::kDone: return "done";
  }
  return "unknown";
}

// One telemetry record per integration step; the command is the one held
// over [t, t + dt].
struct Sample {
  double t = 0.0;
  Vec2 position;
  double psi = 0.0;
  double a_cmd = 0.0;
  double cte = 0.0;
  Phase phase = Phase::kCloseRange;
  double k1 = 1.0;
  double k2 = 0.0;
};

struct RunRecord {
  std::vector<Sample> samples;
};

// Mid-course error is the distance to the path start; otherwise the distance
// to the closest path point.
inline double cross_track_error(const VehicleState& state, const ReferencePath& path, Phase phase,
                                std::optional<double> s_hint = std::nullopt) {
  if (phase == Phase::kMidcourse) return distance(state.pose.position, path.start().position);
  return path.project(state.pose.position, s_hint).distance;
}

struct Summary {
  double a_rms = 0.0;
  double d_rms = 0.0;
  double a_max = 0.0;   // max |a_cmd|
  double a_peak = 0.0;  // max a_cmd (signed, anticlockwise-positive)
  std::size_t samples = 0;
};

// Aggregates over the samples of `phase` (close-range by default), or over
// every sample when `phase` is empty.
inline Summary summarize(const RunRecord& run,
                         std::optional<Phase> phase = Phase::kCloseRange) {
  Summary s;
  s.a_peak = -std::numeric_limits<double>::infinity();
  double sa = 0.0;
  double sd = 0.0;
  for (const Sample& x : run.samples) {
    if (phase && x.phase != *phase) continue;
    sa += x.a_cmd * x.a_cmd;
    sd += x.cte * x.cte;
    s.a_max = std::max(s.a_max, std::abs(x.a_cmd));
    s.a_peak = std::max(s.a_peak, x.a_cmd);
    ++s.samples;
  }
  if (s.samples == 0) throw std::invalid_argument("empty run");
  s.a_rms = std::sqrt(sa / static_cast<double>(s.samples));
  s.d_rms = std::sqrt(sd / static_cast<double>(s.samples));
  return s;
}

struct Improvements {
  double cte_rms = 0.0;  // %
  double ae_rms = 0.0;   // %
  double a_peak = 0.0;   // %, the a_cmd,max column of the comparison table
};

inline double relative_improvement(double baseline, double proposed) {
  if (baseline == 0.0) throw std::invalid_argument("zero baseline denominator");
  return (1.0 - proposed / baseline) * 100.0;
}

inline Improvements improvements(const Summary& baseline, const Summary& proposed) {
  return {relative_improvement(baseline.d_rms, proposed.d_rms),
          relative_improvement(baseline.a_rms, proposed.a_rms),
          relative_improvement(baseline.a_peak, proposed.a_peak)};
}

inline Improvements improvements(const RunRecord& baseline, const RunRecord& proposed) {
  return improvements(summarize(baseline), summarize(proposed));
}

}  // namespace pathguide

#endif  // PATHGUIDE_METRICS_HPP_
