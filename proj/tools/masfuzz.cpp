// Copyright 2026 The masfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "masfuzz/campaign.hpp"
#include "masfuzz/error.hpp"
#include "masfuzz/json_io.hpp"

namespace {

// Usage errors exit with 2 so scripts can tell them apart from campaign
// failures (1) and budget exhaustion (3).
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"masfuzz: API-sequence-driven fuzz driver generation and scheduling for C libraries"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string budget;
  std::string simspec;
  std::uint64_t seed = 0;
  bool stub_oracles = false;
  bool dry_run = false;

  app.add_option("--config", config_path, "campaign config JSON (masfuzz.config/1)")
      ->required()
      ->check(CLI::ExistingFile);
  CLI::Option *seed_opt =
      app.add_option("--seed", seed, "override the campaign RNG seed");
  app.add_option("--budget", budget, "override the fuzzing budget (90, 90s, 15m, 2h)");
  app.add_flag("--stub-oracles", stub_oracles,
               "use the deterministic built-in oracles instead of the HTTP backend");
  app.add_option("--simulate", simspec,
                 "run against a simulation spec instead of real libFuzzer binaries")
      ->check(CLI::ExistingFile);

  CLI::App *cmd_run = app.add_subcommand("run", "all stages in order, resuming from artifacts");
  CLI::App *cmd_mine =
      app.add_subcommand("mine", "scan the library and mine API sequences");
  CLI::App *cmd_generate =
      app.add_subcommand("generate", "synthesize, compile, and seed fuzz drivers");
  CLI::App *cmd_schedule =
      app.add_subcommand("schedule", "execute drivers under the time-scheduling policy");
  cmd_schedule->add_flag("--dry-run", dry_run, "print the decision table without executing");
  CLI::App *cmd_triage = app.add_subcommand("triage", "deduplicate and classify crashes");
  CLI::App *cmd_report = app.add_subcommand("report", "render the campaign report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    masfuzz::CampaignConfig cfg =
        masfuzz::parse_campaign_config(masfuzz::read_text_file(config_path));
    if (seed_opt->count() > 0) {
      cfg.rng_seed = seed;
      cfg.miner.rng_seed = seed;
    }
    if (!budget.empty()) cfg.scheduler.total_budget_ms = masfuzz::parse_duration_ms(budget);
    if (stub_oracles) cfg.oracles.mode = "stub";
    if (!simspec.empty()) {
      cfg.executor.mode = "simulate";
      cfg.executor.simspec_path = simspec;
    }

    masfuzz::Campaign campaign(cfg);
    if (cmd_run->parsed()) {
      int code = campaign.run();
      std::cout << masfuzz::render_report_text(masfuzz::deserialize_report(
          masfuzz::read_text_file((std::filesystem::path(cfg.workdir) / "report.json").string())));
      return code;
    }
    if (cmd_mine->parsed()) {
      campaign.mine();
      std::cout << "model: " << cfg.workdir << "/model.json\n"
                << "sequences: " << cfg.workdir << "/sequences.json\n";
      return masfuzz::kExitCompleted;
    }
    if (cmd_generate->parsed()) {
      campaign.generate();
      std::cout << "drivers: " << cfg.workdir << "/drivers\n"
                << "corpus: " << cfg.workdir << "/corpus\n";
      return masfuzz::kExitCompleted;
    }
    if (cmd_schedule->parsed()) {
      if (dry_run) {
        std::cout << campaign.schedule_dry_run();
        return masfuzz::kExitCompleted;
      }
      campaign.schedule();
      std::cout << "schedule: " << cfg.workdir << "/coverage/schedule.json\n";
      return masfuzz::kExitCompleted;
    }
    if (cmd_triage->parsed()) {
      campaign.triage();
      std::cout << "crashes: " << cfg.workdir << "/crashes\n";
      return masfuzz::kExitCompleted;
    }
    if (cmd_report->parsed()) {
      std::cout << masfuzz::render_report_text(campaign.report());
      return masfuzz::kExitCompleted;
    }
  } catch (const masfuzz::StageDependencyError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return masfuzz::kExitFatal;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return masfuzz::kExitFatal;
  }
  return masfuzz::kExitFatal;
}
