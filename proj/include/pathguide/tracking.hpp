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

#ifndef PATHGUIDE_TRACKING_HPP_
#define PATHGUIDE_TRACKING_HPP_

#include <algorithm>

#include "pathguide/guidance.hpp"
#include "pathguide/path.hpp"
#include "pathguide/vehicle.hpp"

namespace pathguide {

enum class Controller { kBaseline, kProposed };

struct TrackingStep {
  LataxCommand command;
  Projection projection;  // of the vehicle, used for the cross-track error
  double s_min = 0.0;     // advanced progress marker
  LookaheadStatus status = LookaheadStatus::kOnPath;
};

// One close-range guidance evaluation: project, advance the progress marker,
// then apply the selected law.
inline TrackingStep track_path(const VehicleState& state, const ReferencePath& path, double s_min,
                               double L1, Controller controller, const GuidanceGains& gains) {
  TrackingStep out;
  out.projection = path.project(state.pose.position, s_min);
  out.s_min = std::max(s_min, out.projection.point.s);
  if (controller == Controller::kBaseline) {
    const BaselineOutput b = baseline_step(state, path, out.s_min, L1);
    out.command = b.command;
    out.status = b.lookahead.status;
  } else {
    const CorrectorGeometry g = corrector_geometry(state, path, out.s_min, L1, &out.projection);
    out.command = blended_command(state, g, gains);
    out.status = g.lookahead_status;
  }
  return out;
}

}  // namespace pathguide

#endif  // PATHGUIDE_TRACKING_HPP_
