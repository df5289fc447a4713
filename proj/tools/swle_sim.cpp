// Copyright 2026 The SWLE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// swle-sim: run leader-election scenarios in the simulator.
//
//   swle-sim run --config case1.json --seed 3 --out out/
//   swle-sim compare --config case1.json --seeds 5
//
// Exit codes: 0 success, 1 invariant violation, 2 usage or config error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "swle/metrics/report_io.hpp"
#include "swle/sim/config.hpp"
#include "swle/sim/simulator.hpp"
#include "swle/sim/sweep.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string config;
  std::optional<std::uint64_t> views;
  bool quiet = false;
};

void setup_logging(bool quiet) {
  auto logger = spdlog::stderr_color_mt("swle");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(quiet ? spdlog::level::warn : spdlog::level::info);
  if (const char* env = std::getenv("SWLE_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

swle::sim::ScenarioConfig load(const Common& c) {
  auto cfg = swle::sim::load_config(c.config);
  if (c.views) {
    cfg.views = *c.views;
    swle::sim::validate(cfg);
  }
  return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_run(const Common& common, std::optional<std::uint64_t> seed,
            const std::optional<std::string>& mechanism, const std::string& out_dir) {
  auto cfg = load(common);
  if (seed) cfg.seed = *seed;
  if (mechanism) cfg.mechanism = swle::engine::parse_mechanism(*mechanism);
  spdlog::info("running {} ({}, n={}, {} views, seed {})", cfg.name,
               swle::engine::to_string(cfg.mechanism), cfg.n, cfg.views, cfg.seed);
  const auto report = swle::sim::simulate(cfg);
  const auto summary = swle::sim::report_json(report);

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  write_file(dir / "views.csv", swle::metrics::views_csv(report.records));
  write_file(dir / "summary.json", summary.dump(2) + "\n");

  spdlog::info("{} events, simulated {:.3f} s", report.events, report.end_us / 1e6);
  if (!report.horizon_reached) spdlog::warn("time cap reached before the view horizon");
  if (!common.quiet) std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_compare(const Common& common, std::size_t seeds, std::uint64_t first_seed,
                const std::optional<std::string>& out_dir) {
  if (seeds == 0) throw swle::sim::ConfigError("--seeds must be at least 1");
  const auto base = load(common);
  std::vector<swle::sim::ScenarioConfig> jobs;
  for (const auto m : {swle::engine::Mechanism::Swle, swle::engine::Mechanism::RoundRobin}) {
    auto cfg = base;
    cfg.mechanism = m;
    for (auto& j : swle::sim::seed_range(cfg, first_seed, seeds)) jobs.push_back(std::move(j));
  }
  spdlog::info("comparing swle and roundrobin on {} over {} seeds", base.name, seeds);
  const auto results = swle::sim::run_sweep_parallel(jobs);

  nlohmann::ordered_json report;
  report["scenario"] = base.name;
  report["seeds"] = seeds;
  auto rows = nlohmann::ordered_json::array();
  double tput[2] = {0, 0};
  double faulty[2] = {0, 0};
  bool violation = false;

  std::cout << fmt::format("{:>6} {:>14} {:>14} {:>8} {:>10} {:>10}\n", "seed", "swle_op/s",
                           "rr_op/s", "ratio", "swle_flt%", "rr_flt%");
  for (std::size_t i = 0; i < seeds; ++i) {
    const auto& s = results[i];
    const auto& r = results[seeds + i];
    for (const auto* x : {&s, &r}) {
      if (!x->ok) {
        spdlog::error("{} seed {} failed: {}", swle::engine::to_string(x->mechanism), x->seed,
                      x->error);
        violation = violation || x->invariant_violation;
      }
    }
    if (!s.ok || !r.ok) continue;
    const double ratio = r.summary.throughput_avg > 0
                             ? s.summary.throughput_avg / r.summary.throughput_avg
                             : 0.0;
    tput[0] += s.summary.throughput_avg;
    tput[1] += r.summary.throughput_avg;
    faulty[0] += s.summary.faulty_leader_pct;
    faulty[1] += r.summary.faulty_leader_pct;
    std::cout << fmt::format("{:>6} {:>14.1f} {:>14.1f} {:>8.3f} {:>10.2f} {:>10.2f}\n", s.seed,
                             s.summary.throughput_avg, r.summary.throughput_avg, ratio,
                             s.summary.faulty_leader_pct, r.summary.faulty_leader_pct);
    rows.push_back({{"seed", s.seed},
                    {"swle_throughput", s.summary.throughput_avg},
                    {"roundrobin_throughput", r.summary.throughput_avg},
                    {"throughput_ratio", ratio},
                    {"swle_faulty_leader_pct", s.summary.faulty_leader_pct},
                    {"roundrobin_faulty_leader_pct", r.summary.faulty_leader_pct},
                    {"swle_timeout_pct", s.summary.timeout_pct},
                    {"roundrobin_timeout_pct", r.summary.timeout_pct}});
  }
  const std::size_t complete = rows.size();
  report["runs"] = std::move(rows);
  if (complete > 0) {
    const double k = static_cast<double>(complete);
    const double ratio = tput[1] > 0 ? tput[0] / tput[1] : 0.0;
    std::cout << fmt::format("{:>6} {:>14.1f} {:>14.1f} {:>8.3f} {:>10.2f} {:>10.2f}\n", "mean",
                             tput[0] / k, tput[1] / k, ratio, faulty[0] / k, faulty[1] / k);
    report["throughput_ratio"] = ratio;
    report["swle_faulty_leader_pct"] = faulty[0] / k;
    report["roundrobin_faulty_leader_pct"] = faulty[1] / k;
  }
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    write_file(std::filesystem::path(*out_dir) / "compare.json", report.dump(2) + "\n");
  }
  return violation || complete != seeds ? kExitViolation : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate sliding-window leader election on a HotStuff-style engine"};
  app.require_subcommand(1);

  Common run_opts;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mechanism;
  std::string out_dir = "out";
  auto* run = app.add_subcommand("run", "Run one simulation and write views.csv and summary.json");
  run->add_option("--config", run_opts.config, "Scenario JSON file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--mechanism", mechanism, "swle or roundrobin")
      ->check(CLI::IsMember({"swle", "roundrobin"}));
  run->add_option("--views", run_opts.views, "Override the view horizon");
  run->add_flag("--quiet", run_opts.quiet, "Only log warnings and do not echo the summary");

  Common cmp_opts;
  std::size_t seeds = 5;
  std::uint64_t first_seed = 1;
  std::optional<std::string> cmp_out;
  auto* cmp = app.add_subcommand("compare", "Run both mechanisms over several seeds");
  cmp->add_option("--config", cmp_opts.config, "Scenario JSON file")->required();
  cmp->add_option("--seeds", seeds, "Number of seeds")->capture_default_str();
  cmp->add_option("--seed", first_seed, "First seed")->capture_default_str();
  cmp->add_option("--views", cmp_opts.views, "Override the view horizon");
  cmp->add_option("--out", cmp_out, "Directory for compare.json");
  cmp->add_flag("--quiet", cmp_opts.quiet, "Only log warnings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const bool quiet = run->parsed() ? run_opts.quiet : cmp_opts.quiet;
  setup_logging(quiet);
  try {
    if (run->parsed()) return cmd_run(run_opts, seed, mechanism, out_dir);
    return cmd_compare(cmp_opts, seeds, first_seed, cmp_out);
  } catch (const swle::sim::ConfigError& e) {
    spdlog::error("config error: {}", e.what());
    return kExitConfig;
  } catch (const swle::sim::InvariantViolation& e) {
    spdlog::error("invariant violation: {}", e.what());
    for (const auto& line : e.trace()) spdlog::error("  {}", line);
    return kExitViolation;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  }
}
