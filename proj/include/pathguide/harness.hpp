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

#ifndef PATHGUIDE_HARNESS_HPP_
#define PATHGUIDE_HARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pathguide/geom.hpp"
#include "pathguide/guidance.hpp"
#include "pathguide/metrics.hpp"
#include "pathguide/midcourse.hpp"
#include "pathguide/mission.hpp"
#include "pathguide/path.hpp"
#include "pathguide/scenario.hpp"

namespace pathguide {

inline const char* controller_name(Controller c) {
  return c == Controller::kBaseline ? "baseline" : "proposed";
}

inline std::vector<Controller> controllers_of(ControllerChoice c) {
  switch (c) {
    case ControllerChoice::kBaseline:
      return {Controller::kBaseline};
    case ControllerChoice::kProposed:
      return {Controller::kProposed};
    case ControllerChoice::kBoth:
      break;
  }
  return {Controller::kBaseline, Controller::kProposed};
}

struct RunResult {
  Controller controller = Controller::kBaseline;
  RunRecord record;
  Summary summary;
  int optimizer_warnings = 0;
};

inline RunResult run_mission(std::shared_ptr<const ReferencePath> path, const ScenarioConfig& cfg,
                             Controller controller, std::optional<double> heading_deg = {},
                             unsigned optimizer_threads = 1) {
  MissionConfig mc = mission_config(cfg, controller);
  mc.optimizer.threads = optimizer_threads;
  Mission m(std::move(path), initial_state(cfg, heading_deg), mc);
  RunResult r;
  r.controller = controller;
  r.record = m.run();
  r.summary = summarize(r.record);
  r.optimizer_warnings = m.optimizer_warnings();
  return r;
}

struct SweepRow {
  double heading_deg = 0.0;
  Summary baseline;
  Summary proposed;
  Improvements improvement;
  std::string status = "ok";
};

// Rows come back in heading order whatever the thread count.
inline std::vector<SweepRow> run_sweep(std::shared_ptr<const ReferencePath> path,
                                       const ScenarioConfig& cfg, unsigned threads = 1) {
  const auto& headings = cfg.sweep_headings_deg;
  std::vector<SweepRow> rows(headings.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      row.heading_deg = headings[i];
      try {
        row.baseline = run_mission(path, cfg, Controller::kBaseline, headings[i]).summary;
        row.proposed = run_mission(path, cfg, Controller::kProposed, headings[i]).summary;
        row.improvement = improvements(row.baseline, row.proposed);
      } catch (const std::exception& e) {
        row.status = e.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

inline constexpr const char* kSweepHeader =
    "label,heading_deg,baseline_a_rms,baseline_d_rms,baseline_a_max,proposed_a_rms,"
    "proposed_d_rms,proposed_a_max,improvement_d_rms_pct,improvement_a_rms_pct,"
    "improvement_a_max_pct,status";

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepHeader << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    out << 'a' << i + 1 << ',' << fmt_num(r.heading_deg, 3);
    if (r.status == "ok") {
      for (double v : {r.baseline.a_rms, r.baseline.d_rms, r.baseline.a_peak, r.proposed.a_rms,
                       r.proposed.d_rms, r.proposed.a_peak}) {
        out << ',' << fmt_num(v, 6);
      }
      for (double v : {r.improvement.cte_rms, r.improvement.ae_rms, r.improvement.a_peak}) {
        out << ',' << fmt_num(v, 3);
      }
    } else {
      out << ",,,,,,,,,";
    }
    out << ',' << csv_escape(r.status) << '\n';
  }
  return out.str();
}

inline std::string sweep_table(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-4s %9s | %-23s | %-23s | %-26s\n", "", "heading",
                "      fixed L1", "      proposed", "    improvement (%)");
  out << buf;
  std::snprintf(buf, sizeof buf, "%-4s %9s | %7s %7s %7s | %7s %7s %7s | %8s %8s %8s\n", "", "(deg)",
                "a_rms", "d_rms", "a_max", "a_rms", "d_rms", "a_max", "d_rms", "a_rms", "a_max");
  out << buf;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    const std::string label = "a" + std::to_string(i + 1);
    if (r.status != "ok") {
      std::snprintf(buf, sizeof buf, "%-4s %9.3f | failed: %s\n", label.c_str(), r.heading_deg,
                    r.status.c_str());
    } else {
      std::snprintf(buf, sizeof buf,
                    "%-4s %9.3f | %7.3f %7.3f %7.3f | %7.3f %7.3f %7.3f | %8.3f %8.3f %8.3f\n",
                    label.c_str(), r.heading_deg, r.baseline.a_rms, r.baseline.d_rms,
                    r.baseline.a_peak, r.proposed.a_rms, r.proposed.d_rms, r.proposed.a_peak,
                    r.improvement.cte_rms, r.improvement.ae_rms, r.improvement.a_peak);
    }
    out << buf;
  }
  return out.str();
}

// Randomized geometry self-checks.
struct OracleReport {
  int contact_cases = 0;
  int contact_failures = 0;
  double max_contact_angle_error = 0.0;  // rad
  double grid_cell = 0.0;                // rad
  int corrector_cases = 0;
  int corrector_failures = 0;
  double max_corrector_residual = 0.0;  // m
  bool ok() const { return contact_failures == 0 && corrector_failures == 0; }
};

inline constexpr int kOracleSweepSamples = 3600;
inline constexpr double kCorrectorResidualTol = 1e-6;

inline double angle_gap(double a, double b) { return std::abs(normalize_angle(a - b)); }

// Analytic contact point against the brute-force sweep: the smaller-magnitude
// extremum of the signed command over all aim points on the circle.
inline double contact_angle_error(const Vec2& P, double psi, const InitiationCircle& circle,
                                  double speed, int samples) {
  const auto sols = contact_solutions(P, psi, circle, speed);
  const ContactSolution* best = nullptr;
  for (const auto& s : sols) {
    if (!best || std::abs(s.a_const) < std::abs(best->a_const)) best = &s;
  }
  const double phi_brute = brute_force_extremum(P, psi, circle, samples);
  const Vec2 w = best->W - circle.center;
  return angle_gap(std::atan2(w.y, w.x), phi_brute);
}

inline OracleReport run_oracle(std::uint64_t seed, int contact_cases = 100,
                               int corrector_cases = 10000) {
  OracleReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit01(0.0, 1.0);
  rep.grid_cell = 2.0 * kPi / kOracleSweepSamples;

  for (int i = 0; i < contact_cases; ++i) {
    InitiationCircle c;
    c.radius = 1.0 + 19.0 * unit01(rng);
    c.center = {-50.0 + 100.0 * unit01(rng), -50.0 + 100.0 * unit01(rng)};
    c.sense = unit01(rng) < 0.5 ? Sense::kClockwise : Sense::kAnticlockwise;
    const double range = c.radius * (2.0 + 8.0 * unit01(rng));
    const double bearing = 2.0 * kPi * unit01(rng);
    const Vec2 P = c.center + range * heading_vector(bearing);
    // Heading within 80 degrees of the line of sight to the centre.
    const Vec2 los = c.center - P;
    const double psi = std::atan2(los.y, los.x) + (unit01(rng) - 0.5) * (160.0 * kPi / 180.0);
    ++rep.contact_cases;
    double err = kPi;
    try {
      err = contact_angle_error(P, psi, c, 5.0, kOracleSweepSamples);
    } catch (const std::exception&) {
    }
    rep.max_contact_angle_error = std::max(rep.max_contact_angle_error, err);
    if (err > rep.grid_cell) ++rep.contact_failures;
  }

  const ReferencePath path = make_sinusoid_path(0.0, 150.0);
  for (int i = 0; i < corrector_cases; ++i) {
    const double s = path.length() * (0.05 + 0.8 * unit01(rng));
    const PathPoint pp = path.at(s);
    const double offset = -5.0 + 10.0 * unit01(rng);
    VehicleState st;
    st.pose = Pose(pp.position + offset * left_normal(pp.tangent),
                   std::atan2(pp.tangent.y, pp.tangent.x) + (unit01(rng) - 0.5) * 1.2);
    ++rep.corrector_cases;
    double worst = 0.0;
    try {
      const CorrectorGeometry g = corrector_geometry(st, path, 0.0, 10.0);
      const Vec2 h = st.pose.direction();
      const Vec2 normal = left_normal(h);
      worst = std::abs(line_residual(g.p3, g.p1, h));
      worst = std::max(worst, std::abs(line_residual(g.p3, g.p2.position, normal)));
      worst = std::max(worst, std::abs(line_residual(g.p4, g.p2.position, normal)));
      if (!g.fallback) {
        worst = std::max(worst, std::abs(line_residual(g.p4, g.proj.position, g.proj.tangent)));
      }
    } catch (const std::exception&) {
      worst = std::numeric_limits<double>::infinity();
    }
    rep.max_corrector_residual = std::max(rep.max_corrector_residual, worst);
    if (!(worst < kCorrectorResidualTol)) ++rep.corrector_failures;
  }
  return rep;
}

inline std::string oracle_text(const OracleReport& r, std::uint64_t seed) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "seed %llu\n", static_cast<unsigned long long>(seed));
  out << buf;
  std::snprintf(buf, sizeof buf,
                "%s contact points: %d cases, %d failures, max angle error %.3e rad (cell %.3e)\n",
                r.contact_failures ? "FAIL" : "PASS", r.contact_cases, r.contact_failures,
                r.max_contact_angle_error, r.grid_cell);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "%s corrector lines: %d cases, %d failures, max residual %.3e m (tol %.0e)\n",
                r.corrector_failures ? "FAIL" : "PASS", r.corrector_cases, r.corrector_failures,
                r.max_corrector_residual, kCorrectorResidualTol);
  out << buf;
  return out.str();
}

}  // namespace pathguide

#endif  // PATHGUIDE_HARNESS_HPP_
