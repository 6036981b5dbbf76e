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

// pathguide: run, sweep, compare and self-check path-following scenarios.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pathguide/harness.hpp"
#include "pathguide/midcourse.hpp"
#include "pathguide/scenario.hpp"

namespace fs = std::filesystem;
using namespace pathguide;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitOracle = 4;

struct Options {
  std::string config;
  std::string out;
  std::string controller;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::vector<std::string> compare_dirs;
};

ScenarioConfig load(const Options& opt) {
  ScenarioConfig cfg = opt.config.empty() ? default_scenario() : load_scenario(opt.config);
  if (!opt.controller.empty()) {
    const auto c = parse_controller(opt.controller);
    if (!c) throw ConfigError({"--controller: expected baseline, proposed or both"});
    cfg.controller = *c;
  }
  if (!opt.out.empty()) cfg.output_dir = opt.out;
  if (opt.threads == 0) throw ConfigError({"--threads: must be at least 1"});
  return cfg;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

std::string summary_line(const RunResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s a_rms=%.4f d_rms=%.4f a_max=%.4f samples=%zu",
                controller_name(r.controller), r.summary.a_rms, r.summary.d_rms,
                r.summary.a_peak, r.summary.samples);
  return buf;
}

int infeasible(const ScenarioConfig& cfg, const InfeasibleGeometry& e) {
  nlohmann::ordered_json d;
  d["error"] = "infeasible geometry";
  d["detail"] = e.what();
  d["position"] = {cfg.start.x, cfg.start.y};
  d["heading_deg"] = cfg.heading_deg;
  std::cerr << d.dump(2) << '\n';
  return kExitInfeasible;
}

int cmd_run(const Options& opt) {
  const ScenarioConfig cfg = load(opt);
  const auto path = build_path(cfg);
  std::vector<RunResult> results;
  try {
    for (Controller c : controllers_of(cfg.controller)) {
      results.push_back(run_mission(path, cfg, c, std::nullopt, opt.threads));
    }
  } catch (const InfeasibleGeometry& e) {
    return infeasible(cfg, e);
  }

  const fs::path dir = cfg.output_dir;
  prepare_dir(dir);
  nlohmann::ordered_json summary;
  for (const RunResult& r : results) {
    std::ostringstream csv;
    write_trajectory_csv(csv, r.record);
    write_file_atomic(dir / (std::string("trajectory_") + controller_name(r.controller) + ".csv"),
                      csv.str());
    summary[controller_name(r.controller)] = summary_json(r.summary);
    std::cout << summary_line(r) << '\n';
  }
  std::ostringstream pcsv;
  write_path_csv(pcsv, *path);
  write_file_atomic(dir / "path.csv", pcsv.str());
  if (results.size() == 2) {
    const Improvements imp = improvements(results[0].summary, results[1].summary);
    summary["improvement_pct"] = {
        {"d_rms", imp.cte_rms}, {"a_rms", imp.ae_rms}, {"a_max", imp.a_peak}};
    char buf[160];
    std::snprintf(buf, sizeof buf, "improvement d_rms=%.3f%% a_rms=%.3f%% a_max=%.3f%%",
                  imp.cte_rms, imp.ae_rms, imp.a_peak);
    std::cout << buf << '\n';
  }
  write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const Options& opt) {
  const ScenarioConfig cfg = load(opt);
  const auto path = build_path(cfg);
  const auto rows = run_sweep(path, cfg, opt.threads);
  const fs::path dir = cfg.output_dir;
  prepare_dir(dir);
  write_file_atomic(dir / "sweep.csv", sweep_csv(rows));
  const std::string table = sweep_table(rows);
  write_file_atomic(dir / "sweep.txt", table);
  std::cout << table;
  return kExitOk;
}

std::map<std::string, std::vector<double>> read_numeric_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError({"cannot open " + file.string()});
  std::map<std::string, std::vector<double>> out;
  std::string line;
  std::getline(in, line);
  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  for (const auto& c : cols) out[c];
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(ss, cell, ',') && i < cols.size()) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      out[cols[i]].push_back(end != cell.c_str() ? v : std::nan(""));
      ++i;
    }
  }
  return out;
}

int cmd_compare(const Options& opt) {
  if (opt.compare_dirs.size() != 2) throw ConfigError({"compare: expected two run directories"});
  const fs::path a = opt.compare_dirs[0];
  const fs::path b = opt.compare_dirs[1];
  int compared = 0;
  bool identical = true;
  for (const char* name : {"trajectory_baseline.csv", "trajectory_proposed.csv", "path.csv"}) {
    const bool in_a = fs::exists(a / name);
    const bool in_b = fs::exists(b / name);
    if (!in_a && !in_b) continue;
    if (in_a != in_b) {
      std::cout << name << ": present in only one directory\n";
      identical = false;
      continue;
    }
    ++compared;
    const auto ca = read_numeric_csv(a / name);
    const auto cb = read_numeric_csv(b / name);
    std::size_t rows_a = 0;
    std::size_t rows_b = 0;
    for (const auto& [col, xa] : ca) {
      const auto it = cb.find(col);
      rows_a = std::max(rows_a, xa.size());
      if (it == cb.end()) {
        std::cout << name << ": column " << col << " missing in " << b.string() << '\n';
        identical = false;
        continue;
      }
      const auto& xb = it->second;
      rows_b = std::max(rows_b, xb.size());
      double worst = 0.0;
      const std::size_t n = std::min(xa.size(), xb.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(xa[i]) && std::isnan(xb[i])) continue;
        worst = std::max(worst, std::abs(xa[i] - xb[i]));
      }
      if (worst != 0.0) identical = false;
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s %-10s max |diff| %.6e\n", name, col.c_str(), worst);
      std::cout << buf;
    }
    if (rows_a != rows_b) {
      std::cout << name << ": row count " << rows_a << " vs " << rows_b << '\n';
      identical = false;
    }
  }
  for (const fs::path& d : {a, b}) {
    if (!fs::exists(d / "summary.json")) continue;
    std::ifstream in(d / "summary.json");
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) continue;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!it->is_object() || !it->contains("a_cmd_rms")) continue;
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s %-8s a_rms=%.4f d_rms=%.4f a_max=%.4f\n",
                    d.string().c_str(), it.key().c_str(), (*it)["a_cmd_rms"].get<double>(),
                    (*it)["d_rms"].get<double>(), (*it)["a_cmd_max"].get<double>());
      std::cout << buf;
    }
  }
  if (compared == 0) throw ConfigError({"compare: no run outputs found"});
  std::cout << (identical ? "identical\n" : "different\n");
  return kExitOk;
}

int cmd_oracle(const Options& opt) {
  if (!opt.config.empty()) load(opt);  // validated for parity with the other commands
  const OracleReport rep = run_oracle(opt.seed);
  const std::string text = oracle_text(rep, opt.seed);
  std::cout << text;
  if (!opt.out.empty()) {
    prepare_dir(opt.out);
    write_file_atomic(fs::path(opt.out) / "oracle.txt", text);
  }
  return rep.ok() ? kExitOk : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase path-following guidance simulator"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Scenario file (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--threads", opt.threads, "Worker threads");
  };
  CLI::App* run = app.add_subcommand("run", "Run one mission");
  add_common(run);
  run->add_option("--controller", opt.controller, "baseline, proposed or both");
  CLI::App* sweep = app.add_subcommand("sweep", "Compare both controllers across headings");
  add_common(sweep);
  CLI::App* compare = app.add_subcommand("compare", "Diff two run directories");
  compare->add_option("dirs", opt.compare_dirs, "Two run directories")->expected(2)->required();
  CLI::App* oracle = app.add_subcommand("oracle", "Randomized geometry self-checks");
  add_common(oracle);
  oracle->add_option("--seed", opt.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(opt);
    if (*sweep) return cmd_sweep(opt);
    if (*compare) return cmd_compare(opt);
    return cmd_oracle(opt);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const InfeasibleGeometry& e) {
    std::cerr << "infeasible geometry: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
