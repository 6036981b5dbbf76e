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

#ifndef PATHGUIDE_VEHICLE_HPP_
#define PATHGUIDE_VEHICLE_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "pathguide/geom.hpp"

namespace pathguide {

// Planar point mass at constant speed.
struct VehicleState {
  Pose pose;
  double speed = 5.0;  // m/s
  double time = 0.0;   // s
};

// Lateral acceleration command, perpendicular to the velocity,
// anticlockwise-positive (m/s^2).
struct LataxCommand {
  double value = 0.0;
};

struct StepOptions {
  // Symmetric saturation |a| <= max_latax; unset means an ideal inner loop.
  std::optional<double> max_latax;
};

// Advances x' = V cos(psi), y' = V sin(psi), psi' = a/V by one RK4 step with
// the command held constant over the step.
inline VehicleState step(const VehicleState& state, LataxCommand cmd, double dt,
                         const StepOptions& options = {}) {
  if (!std::isfinite(cmd.value)) throw std::invalid_argument("invalid command");
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(state.speed > 0.0)) throw std::invalid_argument("speed must be positive");
  double a = cmd.value;
  if (options.max_latax) a = std::clamp(a, -*options.max_latax, *options.max_latax);

  const double v = state.speed;
  const double rate = a / v;
  const double psi = state.pose.heading;
  // psi(t) is linear under a held command, so only the position stages vary.
  const double psi_mid = psi + 0.5 * dt * rate;
  const double psi_end = psi + dt * rate;
  const Vec2 k1 = v * heading_vector(psi);
  const Vec2 k23 = v * heading_vector(psi_mid);
  const Vec2 k4 = v * heading_vector(psi_end);
  const Vec2 dp = (dt / 6.0) * (k1 + 4.0 * k23 + k4);

  VehicleState next = state;
  next.pose = Pose(state.pose.position + dp, psi_end);
  next.time = state.time + dt;
  return next;
}

}  // namespace pathguide

#endif  // PATHGUIDE_VEHICLE_HPP_
