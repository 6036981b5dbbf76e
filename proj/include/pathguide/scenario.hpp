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

#ifndef PATHGUIDE_SCENARIO_HPP_
#define PATHGUIDE_SCENARIO_HPP_

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pathguide/geom.hpp"
#include "pathguide/metrics.hpp"
#include "pathguide/mission.hpp"
#include "pathguide/path.hpp"
#include "pathguide/vehicle.hpp"

namespace pathguide {

// Aggregates every schema violation found in a scenario file.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::vector<std::string>& problems)
      : std::runtime_error(join(problems)), problems_(problems) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out = "invalid scenario:";
    for (const auto& p : problems) out += "\n  - " + p;
    return out;
  }
  std::vector<std::string> problems_;
};

enum class ControllerChoice { kBaseline, kProposed, kBoth };

struct PathSpec {
  std::string kind = "sinusoid";  // sinusoid | circle | line | polyline
  double x_lo = -15.0;
  double x_hi = 100.0;
  Vec2 center;
  double radius = 10.0;
  Sense sense = Sense::kAnticlockwise;
  double start_angle_deg = 0.0;
  double turns = 1.0;
  Vec2 origin;
  Vec2 direction{1.0, 0.0};
  double length = 1000.0;
  std::vector<Vec2> points;
  std::string points_file;  // CSV of x,y rows, relative to the scenario file
  double spacing = ReferencePath::kDefaultSpacing;
};

// Defaults reproduce the sinusoid comparison scenario: V = 5 m/s,
// L1 = 10 m, start (-15, 0).
struct ScenarioConfig {
  PathSpec path;
  Vec2 start{-15.0, 0.0};
  double heading_deg = 39.118;
  double speed = 5.0;
  double L1 = 10.0;
  double R = 0.0;
  double dt = 0.01;
  std::optional<double> L1_circle;
  std::optional<double> max_latax;
  std::optional<GuidanceGains> fixed_gains;
  double max_time = 600.0;
  ControllerChoice controller = ControllerChoice::kBoth;
  OptimizerSettings optimizer;
  bool d_limit_set = false;
  TransitionTolerances tolerances;
  std::vector<double> sweep_headings_deg;
  std::string output_dir = "out";
};

inline std::vector<double> default_sweep_headings() {
  std::vector<double> h;
  for (int k = 0; k <= 10; ++k) h.push_back(-20.882 + 15.0 * k);
  return h;
}

inline std::optional<ControllerChoice> parse_controller(const std::string& s) {
  if (s == "baseline") return ControllerChoice::kBaseline;
  if (s == "proposed") return ControllerChoice::kProposed;
  if (s == "both") return ControllerChoice::kBoth;
  return std::nullopt;
}

namespace detail {

class Reader {
 public:
  explicit Reader(std::vector<std::string>& problems) : problems_(problems) {}

  const nlohmann::json* child(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) return nullptr;
    const auto& v = obj.at(key);
    if (!v.is_object()) {
      problems_.push_back(where + key + ": expected an object");
      return nullptr;
    }
    return &v;
  }

  void number(const nlohmann::json& obj, const char* key, double& out, const std::string& where,
              bool positive = false) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      problems_.push_back(where + key + ": expected a number");
      return;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x) || (positive && !(x > 0.0))) {
      problems_.push_back(where + key + (positive ? ": must be a positive number" : ": must be finite"));
      return;
    }
    out = x;
  }

  void optional_number(const nlohmann::json& obj, const char* key, std::optional<double>& out,
                       const std::string& where) {
    if (!obj.contains(key)) return;
    double x = 0.0;
    const std::size_t before = problems_.size();
    number(obj, key, x, where, true);
    if (problems_.size() == before) out = x;
  }

  void integer(const nlohmann::json& obj, const char* key, int& out, const std::string& where) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
      problems_.push_back(where + key + ": expected an integer");
      return;
    }
    out = v.get<int>();
  }

  void vec(const nlohmann::json& obj, const char* key, Vec2& out, const std::string& where) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      problems_.push_back(where + key + ": expected [x, y]");
      return;
    }
    out = {v[0].get<double>(), v[1].get<double>()};
  }

  void string(const nlohmann::json& obj, const char* key, std::string& out, const std::string& where) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_string()) {
      problems_.push_back(where + key + ": expected a string");
      return;
    }
    out = v.get<std::string>();
  }

  void unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (!ok) problems_.push_back(where + it.key() + ": unknown key");
    }
  }

  void fail(const std::string& msg) { problems_.push_back(msg); }

 private:
  std::vector<std::string>& problems_;
};

}  // namespace detail

// Parses and validates a scenario document. Throws ConfigError listing every
// problem found.
inline ScenarioConfig parse_scenario(const nlohmann::json& doc) {
  std::vector<std::string> problems;
  detail::Reader rd(problems);
  ScenarioConfig cfg;
  if (!doc.is_object()) throw ConfigError({"scenario root must be an object"});
  rd.unknown_keys(doc, {"path", "vehicle", "guidance", "controller", "optimizer", "tolerances",
                        "sweep", "output_dir"},
                  "");

  if (const auto* p = rd.child(doc, "path", "")) {
    rd.unknown_keys(*p, {"type", "x_range", "center", "radius", "sense", "start_angle_deg", "turns",
                         "origin", "direction", "length", "points", "points_file", "spacing"},
                    "path.");
    rd.string(*p, "type", cfg.path.kind, "path.");
    if (p->contains("x_range")) {
      Vec2 r{cfg.path.x_lo, cfg.path.x_hi};
      rd.vec(*p, "x_range", r, "path.");
      cfg.path.x_lo = r.x;
      cfg.path.x_hi = r.y;
    }
    rd.vec(*p, "center", cfg.path.center, "path.");
    rd.number(*p, "radius", cfg.path.radius, "path.", true);
    if (p->contains("sense")) {
      std::string s;
      rd.string(*p, "sense", s, "path.");
      if (s == "clockwise") cfg.path.sense = Sense::kClockwise;
      else if (s == "anticlockwise") cfg.path.sense = Sense::kAnticlockwise;
      else rd.fail("path.sense: expected \"clockwise\" or \"anticlockwise\"");
    }
    rd.number(*p, "start_angle_deg", cfg.path.start_angle_deg, "path.");
    rd.number(*p, "turns", cfg.path.turns, "path.", true);
    rd.vec(*p, "origin", cfg.path.origin, "path.");
    rd.vec(*p, "direction", cfg.path.direction, "path.");
    rd.number(*p, "length", cfg.path.length, "path.", true);
    rd.number(*p, "spacing", cfg.path.spacing, "path.", true);
    rd.string(*p, "points_file", cfg.path.points_file, "path.");
    if (p->contains("points")) {
      const auto& pts = p->at("points");
      if (!pts.is_array()) {
        rd.fail("path.points: expected an array of [x, y]");
      } else {
        for (const auto& q : pts) {
          if (!q.is_array() || q.size() != 2 || !q[0].is_number() || !q[1].is_number()) {
            rd.fail("path.points: expected an array of [x, y]");
            break;
          }
          cfg.path.points.push_back({q[0].get<double>(), q[1].get<double>()});
        }
      }
    }
    const std::string& k = cfg.path.kind;
    if (k != "sinusoid" && k != "circle" && k != "line" && k != "polyline") {
      rd.fail("path.type: expected sinusoid, circle, line or polyline");
    }
    if (k == "sinusoid" && !(cfg.path.x_lo < cfg.path.x_hi)) rd.fail("path.x_range: empty domain");
    if (k == "line" && norm(cfg.path.direction) == 0.0) rd.fail("path.direction: zero vector");
    if (k == "polyline" && cfg.path.points.empty() && cfg.path.points_file.empty()) {
      rd.fail("path: polyline needs points or points_file");
    }
  }

  if (const auto* v = rd.child(doc, "vehicle", "")) {
    rd.unknown_keys(*v, {"position", "heading_deg", "speed"}, "vehicle.");
    rd.vec(*v, "position", cfg.start, "vehicle.");
    rd.number(*v, "heading_deg", cfg.heading_deg, "vehicle.");
    rd.number(*v, "speed", cfg.speed, "vehicle.", true);
  }

  if (const auto* g = rd.child(doc, "guidance", "")) {
    rd.unknown_keys(*g, {"L1", "R", "dt", "L1_circle", "max_latax", "fixed_gains", "max_time"},
                    "guidance.");
    rd.number(*g, "L1", cfg.L1, "guidance.", true);
    rd.number(*g, "R", cfg.R, "guidance.", true);
    rd.number(*g, "dt", cfg.dt, "guidance.", true);
    rd.number(*g, "max_time", cfg.max_time, "guidance.", true);
    rd.optional_number(*g, "L1_circle", cfg.L1_circle, "guidance.");
    rd.optional_number(*g, "max_latax", cfg.max_latax, "guidance.");
    if (g->contains("fixed_gains")) {
      const auto& fg = g->at("fixed_gains");
      if (!fg.is_array() || fg.size() != 2 || !fg[0].is_number() || !fg[1].is_number() ||
          fg[0].get<double>() < 0.0 || fg[1].get<double>() < 0.0) {
        rd.fail("guidance.fixed_gains: expected [k1, k2] with non-negative entries");
      } else {
        cfg.fixed_gains = GuidanceGains{fg[0].get<double>(), fg[1].get<double>(), cfg.L1};
      }
    }
  }

  if (doc.contains("controller")) {
    std::string c;
    rd.string(doc, "controller", c, "");
    if (const auto parsed = parse_controller(c)) cfg.controller = *parsed;
    else rd.fail("controller: expected baseline, proposed or both");
  }

  if (const auto* o = rd.child(doc, "optimizer", "")) {
    rd.unknown_keys(*o, {"k_max", "grid", "refine_rounds", "d_limit"}, "optimizer.");
    rd.number(*o, "k_max", cfg.optimizer.k_max, "optimizer.", true);
    rd.integer(*o, "grid", cfg.optimizer.grid, "optimizer.");
    rd.integer(*o, "refine_rounds", cfg.optimizer.refine_rounds, "optimizer.");
    if (o->contains("d_limit")) {
      rd.number(*o, "d_limit", cfg.optimizer.d_limit, "optimizer.", true);
      cfg.d_limit_set = true;
    }
    if (cfg.optimizer.grid < 3) rd.fail("optimizer.grid: must be at least 3");
    if (cfg.optimizer.refine_rounds < 0) rd.fail("optimizer.refine_rounds: must be >= 0");
  }

  if (const auto* t = rd.child(doc, "tolerances", "")) {
    rd.unknown_keys(*t, {"position", "heading_deg", "min_aim_range"}, "tolerances.");
    rd.number(*t, "position", cfg.tolerances.position, "tolerances.", true);
    rd.number(*t, "heading_deg", cfg.tolerances.heading_deg, "tolerances.", true);
    rd.number(*t, "min_aim_range", cfg.tolerances.min_aim_range, "tolerances.", true);
  }

  if (const auto* s = rd.child(doc, "sweep", "")) {
    rd.unknown_keys(*s, {"headings_deg"}, "sweep.");
    if (s->contains("headings_deg")) {
      const auto& h = s->at("headings_deg");
      if (!h.is_array() || h.empty()) {
        rd.fail("sweep.headings_deg: expected a non-empty array of numbers");
      } else {
        for (const auto& x : h) {
          if (!x.is_number()) {
            rd.fail("sweep.headings_deg: expected a non-empty array of numbers");
            break;
          }
          cfg.sweep_headings_deg.push_back(x.get<double>());
        }
      }
    }
  }
  rd.string(doc, "output_dir", cfg.output_dir, "");

  if (!cfg.d_limit_set) cfg.optimizer.d_limit = 2.0 * cfg.L1;
  if (cfg.fixed_gains) cfg.fixed_gains->L1 = cfg.L1;
  if (cfg.sweep_headings_deg.empty()) cfg.sweep_headings_deg = default_sweep_headings();
  if (!problems.empty()) throw ConfigError(problems);
  return cfg;
}

inline ScenarioConfig default_scenario() { return parse_scenario(nlohmann::json::object()); }

inline std::vector<Vec2> read_points_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError({"path.points_file: cannot open " + file.string()});
  std::vector<Vec2> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    double x = 0.0;
    double y = 0.0;
    char comma = 0;
    std::istringstream ls(line);
    if (!(ls >> x >> comma >> y) || comma != ',') {
      if (lineno == 1) continue;  // header row
      throw ConfigError({"path.points_file: malformed row " + std::to_string(lineno)});
    }
    pts.push_back({x, y});
  }
  return pts;
}

// Loads a scenario file; relative points_file entries resolve against the
// scenario's directory.
inline ScenarioConfig load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError({"cannot open scenario file " + file.string()});
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({std::string("malformed scenario file: ") + e.what()});
  }
  ScenarioConfig cfg = parse_scenario(doc);
  if (!cfg.path.points_file.empty()) {
    std::filesystem::path pf = cfg.path.points_file;
    if (pf.is_relative()) pf = file.parent_path() / pf;
    cfg.path.points = read_points_csv(pf);
  }
  return cfg;
}

inline std::shared_ptr<const ReferencePath> build_path(const ScenarioConfig& cfg) {
  const PathSpec& p = cfg.path;
  try {
    if (p.kind == "sinusoid") {
      return std::make_shared<const ReferencePath>(make_sinusoid_path(p.x_lo, p.x_hi, p.spacing));
    }
    if (p.kind == "circle") {
      return std::make_shared<const ReferencePath>(make_circle_path(
          p.center, p.radius, p.sense, p.start_angle_deg * kPi / 180.0, p.turns, p.spacing));
    }
    if (p.kind == "line") {
      return std::make_shared<const ReferencePath>(
          make_line_path(p.origin, p.direction, p.length, p.spacing));
    }
    return std::make_shared<const ReferencePath>(make_polyline_path(p.points, p.spacing));
  } catch (const std::invalid_argument& e) {
    throw ConfigError({std::string("path: ") + e.what()});
  }
}

inline VehicleState initial_state(const ScenarioConfig& cfg, std::optional<double> heading_deg = {}) {
  VehicleState s;
  s.pose = Pose(cfg.start, heading_deg.value_or(cfg.heading_deg) * kPi / 180.0);
  s.speed = cfg.speed;
  return s;
}

inline MissionConfig mission_config(const ScenarioConfig& cfg, Controller controller) {
  MissionConfig m;
  m.L1 = cfg.L1;
  m.R = cfg.R;
  m.dt = cfg.dt;
  m.L1_circle = cfg.L1_circle;
  m.controller = controller;
  m.fixed_gains = cfg.fixed_gains;
  m.optimizer = cfg.optimizer;
  m.tolerances = cfg.tolerances;
  m.max_latax = cfg.max_latax;
  m.max_time = cfg.max_time;
  return m;
}

// Fixed-format number rendering so identical runs give identical bytes.
inline std::string fmt_num(double v, int precision = 9) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

inline constexpr const char* kTrajectoryHeader = "t,x,y,psi,a_cmd,cte,phase,k1,k2";

inline void write_trajectory_csv(std::ostream& out, const RunRecord& run) {
  out << kTrajectoryHeader << '\n';
  for (const Sample& s : run.samples) {
    out << fmt_num(s.t, 4) << ',' << fmt_num(s.position.x) << ',' << fmt_num(s.position.y) << ','
        << fmt_num(s.psi) << ',' << fmt_num(s.a_cmd) << ',' << fmt_num(s.cte) << ','
        << phase_name(s.phase) << ',' << fmt_num(s.k1, 6) << ',' << fmt_num(s.k2, 6) << '\n';
  }
}

inline void write_path_csv(std::ostream& out, const ReferencePath& path, double step = 0.5) {
  out << "s,x,y,curvature\n";
  const auto n = static_cast<std::size_t>(std::ceil(path.length() / step));
  for (std::size_t i = 0; i <= n; ++i) {
    const PathPoint p = path.at(std::min(path.length(), static_cast<double>(i) * step));
    out << fmt_num(p.s, 6) << ',' << fmt_num(p.position.x) << ',' << fmt_num(p.position.y) << ','
        << fmt_num(p.curvature) << '\n';
  }
}

inline nlohmann::ordered_json summary_json(const Summary& s) {
  nlohmann::ordered_json j;
  j["a_cmd_rms"] = s.a_rms;
  j["d_rms"] = s.d_rms;
  j["a_cmd_max"] = s.a_peak;
  j["abs_a_cmd_max"] = s.a_max;
  j["samples"] = s.samples;
  return j;
}

// Writes `contents` to `file` through a temporary sibling and a rename.
inline void write_file_atomic(const std::filesystem::path& file, const std::string& contents) {
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace pathguide

#endif  // PATHGUIDE_SCENARIO_HPP_
