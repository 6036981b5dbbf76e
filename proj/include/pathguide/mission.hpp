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

#ifndef PATHGUIDE_MISSION_HPP_
#define PATHGUIDE_MISSION_HPP_

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>

#include "pathguide/geom.hpp"
#include "pathguide/guidance.hpp"
#include "pathguide/metrics.hpp"
#include "pathguide/midcourse.hpp"
#include "pathguide/optimizer.hpp"
#include "pathguide/path.hpp"
#include "pathguide/tracking.hpp"
#include "pathguide/vehicle.hpp"

namespace pathguide {

struct TransitionTolerances {
  double position = 0.25;      // m
  double heading_deg = 2.0;    // deg
  double min_aim_range = 0.1;  // m; closer than this the static aim point hands over
};

struct MissionConfig {
  double L1 = 10.0;
  double R = 0.0;  // initiation radius; <= 0 selects L1 / 2
  double dt = 0.01;
  std::optional<double> L1_circle;  // circle-following look-ahead, defaults to L1
  Controller controller = Controller::kProposed;
  std::optional<GuidanceGains> fixed_gains;  // bypasses the optimizer
  OptimizerSettings optimizer;
  TransitionTolerances tolerances;
  std::optional<double> max_latax;
  double max_time = 600.0;

  double initiation_radius() const { return R > 0.0 ? R : 0.5 * L1; }

  void validate() const {
    if (!(L1 > 0.0)) throw std::invalid_argument("L1 must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(max_time > 0.0)) throw std::invalid_argument("max_time must be positive");
    if (L1_circle && !(*L1_circle > 0.0)) throw std::invalid_argument("L1_circle must be positive");
    if (max_latax && !(*max_latax > 0.0)) throw std::invalid_argument("max_latax must be positive");
    if (fixed_gains && (fixed_gains->k1 < 0.0 || fixed_gains->k2 < 0.0)) {
      throw std::invalid_argument("gains must be non-negative");
    }
    optimizer.validate();
  }
};

// Mid-course iff the vehicle is at least 2 R0 from the path start.
inline Phase classify_phase(const VehicleState& state, const ReferencePath& path, double R0) {
  return distance(state.pose.position, path.start().position) >= 2.0 * R0 ? Phase::kMidcourse
                                                                          : Phase::kCloseRange;
}

// Runs the full guidance loop: mid-course approach to an initiation circle,
// circle following to the path start, close-range tracking, then a short
// zero-command coast after the look-ahead point reaches the path end.
class Mission {
 public:
  Mission(std::shared_ptr<const ReferencePath> path, VehicleState initial, MissionConfig config)
      : path_(std::move(path)), state_(initial), config_(std::move(config)) {
    if (!path_) throw std::invalid_argument("mission needs a path");
    config_.validate();
    if (!(state_.speed > 0.0)) throw std::invalid_argument("speed must be positive");
    const double R0 = curvature_radius(path_->start());
    phase_ = classify_phase(state_, *path_, R0);
    if (phase_ == Phase::kMidcourse) {
      const auto candidates = candidate_circles(*path_, config_.initiation_radius());
      selection_ = select_circle(state_.pose.position, state_.pose.heading, state_.speed, candidates);
    } else {
      enter_close_range();
    }
  }

  bool finished() const { return finished_; }
  Phase phase() const { return phase_; }
  const VehicleState& state() const { return state_; }
  double s_min() const { return s_min_; }
  const std::optional<CircleSelection>& selection() const { return selection_; }
  const GuidanceGains& gains() const { return gains_; }
  int optimizer_warnings() const { return optimizer_warnings_; }

  // Advances one integration step and returns its telemetry record.
  Sample step() {
    if (finished_) throw std::logic_error("mission already finished");
    LataxCommand cmd{0.0};
    double cte = 0.0;
    if (phase_ == Phase::kMidcourse) {
      if (reached_contact()) {
        phase_ = Phase::kCircleFollow;
      } else {
        cmd = midcourse_command(state_, selection_->solution);
        cte = cross_track_error(state_, *path_, Phase::kMidcourse);
      }
    }
    if (phase_ == Phase::kCircleFollow) {
      if (reached_start()) {
        enter_close_range();
      } else {
        cmd = circle_follow_command(state_, selection_->circle, config_.L1_circle.value_or(config_.L1));
        cte = cross_track_error(state_, *path_, Phase::kCircleFollow);
      }
    }
    if (phase_ == Phase::kCloseRange) {
      if (config_.controller == Controller::kProposed && !config_.fixed_gains &&
          steps_to_reoptimize_ <= 0) {
        reoptimize();
      }
      const TrackingStep ts = track_path(state_, *path_, s_min_, config_.L1, config_.controller, gains_);
      if (ts.status == LookaheadStatus::kEndOfPath) {
        phase_ = Phase::kDone;
        coast_steps_ = std::lround(config_.L1 / state_.speed / config_.dt);
      } else {
        s_min_ = ts.s_min;
        cmd = ts.command;
        cte = ts.projection.distance;
        --steps_to_reoptimize_;
      }
    }
    if (phase_ == Phase::kDone) {
      cmd = {0.0};
      cte = path_->project(state_.pose.position, s_min_).distance;
    }

    Sample rec;
    rec.t = state_.time;
    rec.position = state_.pose.position;
    rec.psi = state_.pose.heading;
    rec.a_cmd = cmd.value;
    rec.cte = cte;
    rec.phase = phase_;
    rec.k1 = gains_.k1;
    rec.k2 = gains_.k2;

    StepOptions opts;
    opts.max_latax = config_.max_latax;
    state_ = pathguide::step(state_, cmd, config_.dt, opts);
    if (phase_ == Phase::kDone && --coast_steps_ < 0) finished_ = true;
    if (state_.time >= config_.max_time) finished_ = true;
    return rec;
  }

  RunRecord run() {
    RunRecord rec;
    while (!finished_) rec.samples.push_back(step());
    return rec;
  }

 private:
  bool heading_within(const Vec2& direction) const {
    const double tol = config_.tolerances.heading_deg * kPi / 180.0;
    return std::abs(signed_angle(state_.pose.direction(), direction)) <= tol;
  }

  bool reached_contact() const {
    const Vec2 w = selection_->solution.W;
    const Vec2 p = state_.pose.position;
    const double range = distance(w, p);
    if (range < config_.tolerances.min_aim_range) return true;
    if (range <= config_.tolerances.position &&
        heading_within(selection_->circle.tangent_at(p))) {
      return true;
    }
    // Aim point already behind the vehicle.
    return dot(w - p, state_.pose.direction()) <= 0.0;
  }

  bool reached_start() const {
    const PathPoint& start = path_->start();
    return distance(state_.pose.position, start.position) <= config_.tolerances.position &&
           heading_within(start.tangent);
  }

  void enter_close_range() {
    phase_ = Phase::kCloseRange;
    s_min_ = path_->project(state_.pose.position).point.s;
    steps_to_reoptimize_ = 0;
    gains_ = config_.fixed_gains.value_or(GuidanceGains{1.0, 0.0, config_.L1});
    gains_.L1 = config_.L1;
  }

  void reoptimize() {
    const double horizon =
        adaptive_interval(state_, *path_, s_min_, config_.optimizer.d_limit);
    const GainChoice choice =
        optimize_gains(state_, *path_, s_min_, config_.L1, horizon, config_.dt, config_.optimizer);
    if (choice.warning) ++optimizer_warnings_;
    gains_ = {choice.k1, choice.k2, config_.L1};
    steps_to_reoptimize_ = std::max<long>(1, std::lround(horizon / config_.dt));
  }

  std::shared_ptr<const ReferencePath> path_;
  VehicleState state_;
  MissionConfig config_;
  Phase phase_ = Phase::kCloseRange;
  std::optional<CircleSelection> selection_;
  double s_min_ = 0.0;
  GuidanceGains gains_{1.0, 0.0, 10.0};
  long steps_to_reoptimize_ = 0;
  long coast_steps_ = 0;
  int optimizer_warnings_ = 0;
  bool finished_ = false;
};

}  // namespace pathguide

#endif  // PATHGUIDE_MISSION_HPP_
