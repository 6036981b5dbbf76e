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

#ifndef PATHGUIDE_OPTIMIZER_HPP_
#define PATHGUIDE_OPTIMIZER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "pathguide/guidance.hpp"
#include "pathguide/path.hpp"
#include "pathguide/tracking.hpp"
#include "pathguide/vehicle.hpp"

namespace pathguide {

struct OptimizerSettings {
  double k_max = 10.0;   // search box [0, k_max]^2
  int grid = 11;         // coarse grid points per axis
  int refine_rounds = 2;
  double d_limit = 20.0;  // m, usually 2 L1
  unsigned threads = 1;

  void validate() const {
    if (!(k_max > 0.0)) throw std::invalid_argument("optimizer k_max must be positive");
    if (grid < 3) throw std::invalid_argument("optimizer grid must be at least 3");
    if (refine_rounds < 0) throw std::invalid_argument("optimizer refine_rounds must be >= 0");
    if (!(d_limit > 0.0)) throw std::invalid_argument("optimizer d_limit must be positive");
  }
};

// Re-optimization interval: min(d_limit, R at the vehicle's projection) / V.
inline double adaptive_interval(const VehicleState& state, const ReferencePath& path,
                                double s_hint, double d_limit) {
  if (!(state.speed > 0.0)) throw std::invalid_argument("speed must be positive");
  const Projection proj = path.project(state.pose.position, s_hint);
  const double d_online = std::min(d_limit, curvature_radius(proj.point));
  return d_online / state.speed;
}

inline constexpr double kInfeasibleCost = std::numeric_limits<double>::infinity();

// RMS cross-track error of the blended law with fixed gains, simulated from a
// copy of the state for `horizon` seconds. Geometry failures make the
// candidate infeasible.
inline double rollout_cost(VehicleState state, const ReferencePath& path, double s_min,
                           const GuidanceGains& gains, double horizon, double dt) {
  if (!(horizon > 0.0)) throw std::invalid_argument("rollout horizon must be positive");
  const auto steps = std::max<long>(1, std::lround(horizon / dt));
  double sum = 0.0;
  long count = 0;
  try {
    for (long i = 0; i < steps; ++i) {
      const TrackingStep ts = track_path(state, path, s_min, gains.L1, Controller::kProposed, gains);
      sum += ts.projection.distance * ts.projection.distance;
      ++count;
      if (ts.status == LookaheadStatus::kEndOfPath) break;
      s_min = ts.s_min;
      state = step(state, ts.command, dt);
    }
  } catch (const std::exception&) {
    return kInfeasibleCost;
  }
  return std::sqrt(sum / static_cast<double>(count));
}

struct GainChoice {
  double k1 = 1.0;
  double k2 = 0.0;
  double cost = kInfeasibleCost;
  bool warning = false;  // every candidate was infeasible
  int evaluations = 0;
};

namespace detail {

struct Candidate {
  double k1;
  double k2;
  double cost = kInfeasibleCost;
};

// Lexicographic (cost, k2, k1); costs within a relative 1e-12 count as equal.
inline bool better(const Candidate& a, const Candidate& b) {
  if (std::isfinite(a.cost) != std::isfinite(b.cost)) return std::isfinite(a.cost);
  if (std::isfinite(a.cost)) {
    const double tol = 1e-12 * (1.0 + std::max(a.cost, b.cost));
    if (a.cost < b.cost - tol) return true;
    if (b.cost < a.cost - tol) return false;
  }
  if (a.k2 != b.k2) return a.k2 < b.k2;
  return a.k1 < b.k1;
}

inline void evaluate(std::vector<Candidate>& batch, const VehicleState& state,
                     const ReferencePath& path, double s_min, double L1, double horizon, double dt,
                     unsigned threads) {
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      batch[i].cost = rollout_cost(state, path, s_min, {batch[i].k1, batch[i].k2, L1}, horizon, dt);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(batch.size())));
  if (threads == 1) {
    work(0, batch.size());
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (batch.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(batch.size(), begin + chunk);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

// Coarse grid over [0, k_max]^2 (always containing (1, 0)) followed by
// refinement rounds that halve the cell around the incumbent. The result does
// not depend on evaluation order.
inline GainChoice optimize_gains(const VehicleState& state, const ReferencePath& path,
                                 double s_min, double L1, double horizon, double dt,
                                 const OptimizerSettings& settings) {
  settings.validate();
  std::vector<detail::Candidate> evaluated;
  auto seen = [&](double k1, double k2) {
    return std::any_of(evaluated.begin(), evaluated.end(),
                       [&](const detail::Candidate& c) { return c.k1 == k1 && c.k2 == k2; });
  };

  std::vector<detail::Candidate> batch;
  const double cell0 = settings.k_max / (settings.grid - 1);
  for (int i = 0; i < settings.grid; ++i) {
    for (int j = 0; j < settings.grid; ++j) {
      batch.push_back({settings.k_max * i / (settings.grid - 1),
                       settings.k_max * j / (settings.grid - 1)});
    }
  }
  const bool has_baseline = std::any_of(batch.begin(), batch.end(), [](const auto& c) {
    return c.k1 == 1.0 && c.k2 == 0.0;
  });
  if (!has_baseline && settings.k_max >= 1.0) batch.push_back({1.0, 0.0});

  detail::Candidate best{1.0, 0.0};
  double cell = cell0;
  for (int round = 0; round <= settings.refine_rounds; ++round) {
    detail::evaluate(batch, state, path, s_min, L1, horizon, dt, settings.threads);
    evaluated.insert(evaluated.end(), batch.begin(), batch.end());
    best = evaluated.front();
    for (const auto& c : evaluated) {
      if (detail::better(c, best)) best = c;
    }
    if (round == settings.refine_rounds) break;
    cell *= 0.5;
    batch.clear();
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        const double k1 = std::clamp(best.k1 + di * cell, 0.0, settings.k_max);
        const double k2 = std::clamp(best.k2 + dj * cell, 0.0, settings.k_max);
        const bool dup = seen(k1, k2) || std::any_of(batch.begin(), batch.end(), [&](const auto& c) {
                           return c.k1 == k1 && c.k2 == k2;
                         });
        if (!dup) batch.push_back({k1, k2});
      }
    }
  }

  GainChoice out;
  out.evaluations = static_cast<int>(evaluated.size());
  if (!std::isfinite(best.cost)) {
    out.warning = true;
    return out;
  }
  out.k1 = best.k1;
  out.k2 = best.k2;
  out.cost = best.cost;
  return out;
}

}  // namespace pathguide

#endif  // PATHGUIDE_OPTIMIZER_HPP_
