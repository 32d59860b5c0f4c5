// Copyright 2026 The FUM Negotiation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end:
//
//   fum run <1|2|3|4> [--config FILE] --out DIR --seed N [--scale F]
//   fum trace [--config FILE] --seed N [--csv]
//   fum selftest [--seed N]

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fum/baselines.hpp"
#include "fum/harness/config.hpp"
#include "fum/harness/csv.hpp"
#include "fum/harness/experiments.hpp"
#include "fum/harness/scenario.hpp"
#include "fum/harness/seeding.hpp"
#include "fum/harness/selftest.hpp"
#include "fum/trace.hpp"

namespace {

using fum::harness::ExperimentConfig;

ExperimentConfig config_for(const std::string& path, int experiment) {
  if (path.empty()) return fum::harness::default_config(experiment);
  return fum::harness::load_config(path, experiment);
}

int cmd_run(int experiment, const std::string& config_path,
            const std::string& out_dir, std::uint64_t seed, double scale) {
  const ExperimentConfig config =
      fum::harness::scaled(config_for(config_path, experiment), scale);
  const auto result = fum::harness::run_experiment(experiment, config, seed);
  for (const auto& path : fum::harness::write_experiment_csv(result, out_dir)) {
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

int cmd_trace(const std::string& config_path, std::uint64_t seed, bool csv) {
  ExperimentConfig config = config_for(config_path, 0);
  fum::harness::Stream rng(seed);
  const fum::Scenario scenario =
      fum::harness::generate_scenario(config.base, rng);
  fum::MediatorConfig mediator;
  mediator.agenda = config.agenda;
  mediator.threshold = fum::VoteThreshold(config.vote_threshold);
  mediator.record_construction = true;
  const fum::NegotiationRecord rec =
      fum::harness::run_model(scenario, config.model, mediator, rng,
                               config.re_offers);
  const auto events = fum::trace_events(scenario, rec);
  if (csv) {
    fum::write_trace_csv(events, std::cout);
  } else {
    fum::write_trace_text(events, std::cout);
  }
  return 0;
}

int cmd_selftest(std::uint64_t seed) {
  bool ok = true;
  for (const auto& check : fum::harness::run_selftest(seed)) {
    std::cout << (check.passed() ? "PASS " : "FAIL ") << check.name << " ("
              << check.violations << " violations / " << check.trials
              << " trials)\n";
    ok = ok && check.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mediated team negotiation simulator"};
  app.require_subcommand(1);

  int experiment = 0;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 1;
  double scale = 0.25;
  auto* run = app.add_subcommand("run", "run one of the four experiments");
  run->add_option("experiment", experiment, "experiment id")
      ->required()
      ->check(CLI::Range(1, 4));
  run->add_option("--config", config_path, "key = value config file");
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--seed", seed, "master seed")->required();
  run->add_option("--scale", scale, "fraction of the configured team count")
      ->check(CLI::PositiveNumber);

  bool csv = false;
  auto* trace = app.add_subcommand("trace", "print a round-by-round trace");
  trace->add_option("--config", config_path, "key = value config file");
  trace->add_option("--seed", seed, "scenario seed")->required();
  trace->add_flag("--csv", csv, "emit structured rows instead of text");

  auto* selftest = app.add_subcommand("selftest", "run the invariant checks");
  selftest->add_option("--seed", seed, "seed for randomized checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(experiment, config_path, out_dir, seed, scale);
    if (*trace) return cmd_trace(config_path, seed, csv);
    if (*selftest) return cmd_selftest(seed);
  } catch (const fum::harness::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
