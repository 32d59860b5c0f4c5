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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fum/harness/config.hpp"
#include "fum/harness/csv.hpp"
#include "fum/harness/experiments.hpp"
#include "fum/harness/metrics.hpp"
#include "fum/harness/scenario.hpp"
#include "fum/harness/seeding.hpp"

namespace fum::harness {
namespace {

ConfigError config_error(const std::string& text) {
  ExperimentConfig c;
  try {
    apply_config_text(c, text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return ConfigError("", "");
}

TEST(Config, ExperimentDefaults) {
  const ExperimentConfig c = default_config(2);
  EXPECT_EQ(c.base.team_size, 4);
  EXPECT_EQ(c.base.attributes, 4);
  EXPECT_EQ(c.short_deadline.min, 5);
  EXPECT_EQ(c.short_deadline.max, 10);
  EXPECT_EQ(c.long_deadline.min, 30);
  EXPECT_EQ(c.long_deadline.max, 60);
  EXPECT_DOUBLE_EQ(c.base.beta_min, 0.4);
  EXPECT_DOUBLE_EQ(c.base.beta_max, 0.99);
  EXPECT_DOUBLE_EQ(c.base.ru_max, 0.25);
  EXPECT_EQ(c.base.negotiations(), 4800);
  EXPECT_EQ(c.epsilons.size(), 9u);
  const ExperimentConfig one = default_config(1);
  EXPECT_EQ(one.base.negotiations(), 4400);
  EXPECT_EQ(one.short_deadline.min, 10);
  EXPECT_EQ(one.long_deadline.max, 50);
  EXPECT_DOUBLE_EQ(one.base.beta_min, 1.0);
  EXPECT_DOUBLE_EQ(one.base.ru_max, 0.0);
}

TEST(Config, ParsesKeysCommentsAndLists) {
  ExperimentConfig c;
  apply_config_text(c,
                    "# comment\n"
                    "team_size = 3   # trailing\n"
                    "\n"
                    "epsilons = 0, 0.1\n"
                    "agenda = perfect\n"
                    "opponent_mode = uniform\n"
                    "shared_deadline = true\n"
                    "vote_threshold = 0.75\n"
                    "re_offers = random\n"
                    "model = ssv\n"
                    "workers = 2\n");
  EXPECT_EQ(c.base.team_size, 3);
  EXPECT_EQ(c.epsilons, (std::vector<double>{0.0, 0.1}));
  EXPECT_EQ(c.agenda.kind, AgendaPolicy::Kind::kPerfect);
  EXPECT_EQ(c.base.opponent_mode, OfferMode::kUniform);
  EXPECT_TRUE(c.base.shared_deadline);
  EXPECT_DOUBLE_EQ(c.vote_threshold, 0.75);
  EXPECT_EQ(c.re_offers, ReOffers::kRandom);
  EXPECT_EQ(c.model, TeamModel::kSimilarityVoting);
  EXPECT_EQ(c.workers, 2u);
}

TEST(Config, ErrorsNameTheOffendingKey) {
  EXPECT_EQ(config_error("colour = blue\n").key(), "colour");
  EXPECT_EQ(config_error("team_size = 0\n").key(), "team_size");
  EXPECT_EQ(config_error("team_size = four\n").key(), "team_size");
  EXPECT_EQ(config_error("ru_max = 1.5\n").key(), "ru_max");
  EXPECT_EQ(config_error("agenda = clever\n").key(), "agenda");
  EXPECT_EQ(config_error("epsilon =\n").key(), "epsilon");
  EXPECT_EQ(config_error("beta_min = 2\nbeta_max = 1\n").key(), "beta_min");
  EXPECT_EQ(config_error("short_deadline_min = 12\n").key(),
            "short_deadline_min");
  EXPECT_EQ(config_error("ru_max = 0.9\nepsilon = 0.2\n").key(), "epsilon");
  EXPECT_EQ(config_error("vote_threshold = 0\n").key(), "vote_threshold");
  EXPECT_EQ(config_error("deviation_factors = 1.5, 0.5\n").key(),
            "deviation_factors");
  EXPECT_EQ(config_error("slightly_deviated = 3\nhighly_deviated = 2\n").key(),
            "slightly_deviated");
  const ConfigError e = config_error("colour = blue\n");
  EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
}

TEST(Config, MissingFileIsReported) {
  EXPECT_THROW(load_config("/nonexistent/fum.cfg", 1), std::runtime_error);
}

TEST(Config, RepositoryConfigsLoad) {
  const std::filesystem::path dir = FUM_SOURCE_DIR "/configs";
  int loaded = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".cfg") continue;
    EXPECT_NO_THROW(load_config(entry.path().string(), 0)) << entry.path();
    ++loaded;
  }
  EXPECT_GT(loaded, 0);
}

TEST(Scaling, ShrinksTeamsOnly) {
  const ExperimentConfig c = scaled(default_config(3), 0.1);
  EXPECT_EQ(c.base.teams, 10);
  EXPECT_EQ(c.base.opponents, 12);
  EXPECT_EQ(c.base.repetitions, 4);
  EXPECT_EQ(c.base.negotiations(), 480);
  EXPECT_EQ(scaled(default_config(1), 0.25).base.negotiations(), 1100);
  EXPECT_EQ(scaled(default_config(2), 1e-6).base.teams, 1);
  EXPECT_THROW(scaled(default_config(2), 0.0), ConfigError);
}

TEST(Scaling, ExperimentThreeAtOneTenthRuns480PerCell) {
  ExperimentConfig c = scaled(default_config(3), 0.1);
  c.workers = 1;
  const ExperimentResult r = run_experiment(3, c, 5);
  EXPECT_EQ(r.rows.size(), 30u);
  for (const CellRow& row : r.rows) EXPECT_EQ(row.metrics.samples, 480u);
}

TEST(Seeding, PositionBasedAndDistinct) {
  EXPECT_EQ(derive_seed(7, {1, 2, 3}), derive_seed(7, {1, 2, 3}));
  EXPECT_NE(derive_seed(7, {1, 2, 3}), derive_seed(7, {3, 2, 1}));
  EXPECT_NE(derive_seed(7, {1, 2, 3}), derive_seed(8, {1, 2, 3}));
  EXPECT_NE(derive_seed(7, {0}), derive_seed(7, {0, 0}));
  Stream a = make_stream(9, {kTeamDomain, 0, 4});
  Stream b = make_stream(9, {kTeamDomain, 0, 4});
  EXPECT_EQ(a(), b());
}

TEST(Scenario, DrawsFollowTheDistribution) {
  Stream rng(71);
  ScenarioDistribution dist;
  for (int k = 0; k < 2000; ++k) {
    const Scenario s = generate_scenario(dist, rng);
    EXPECT_NO_THROW(s.validate());
    ASSERT_EQ(s.team.size(), 4u);
    EXPECT_GE(s.team_deadline(), 5);
    EXPECT_LE(s.team_deadline(), 10);
    EXPECT_GE(s.opponent.params.deadline, 5);
    EXPECT_LE(s.opponent.params.deadline, 10);
    for (const TeamMember& m : s.team) {
      double sum = 0.0;
      for (double w : m.profile.weights()) sum += w;
      EXPECT_NEAR(sum, 1.0, 1e-9);
      EXPECT_GE(m.params.beta, 0.4);
      EXPECT_LE(m.params.beta, 0.99);
      EXPECT_GE(m.params.ru, 0.0);
      EXPECT_LE(m.params.ru, 0.25);
      EXPECT_EQ(m.params.beta, s.team[0].params.beta);
      EXPECT_EQ(m.behavior, Behavior::kStandard);
      for (Direction d : m.profile.directions()) {
        EXPECT_EQ(d, Direction::kIncreasing);
      }
    }
    double sum = 0.0;
    for (double w : s.opponent.profile.weights()) sum += w;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

std::size_t infiltrators(const Scenario& s) {
  std::size_t count = 0;
  for (const TeamMember& m : s.team) count += m.genuine() ? 0 : 1;
  return count;
}

TEST(Scenario, InfiltrationProbability) {
  Stream rng(72);
  ScenarioDistribution dist;
  dist.infiltration_probability = 0.0;
  for (int k = 0; k < 1000; ++k) {
    EXPECT_EQ(infiltrators(generate_scenario(dist, rng)), 0u);
  }
  dist.infiltration_probability = 1.0;
  for (int k = 0; k < 1000; ++k) {
    const Scenario s = generate_scenario(dist, rng);
    EXPECT_EQ(infiltrators(s), 1u);
    for (const TeamMember& m : s.team) {
      if (m.genuine()) continue;
      EXPECT_GE(m.params.ru, 0.8);
      EXPECT_LE(m.params.ru, 1.0);
    }
  }
  dist.infiltration_probability = 0.5;
  std::size_t hits = 0;
  for (int k = 0; k < 4000; ++k) hits += infiltrators(generate_scenario(dist, rng));
  EXPECT_NEAR(hits / 4000.0, 0.5, 0.05);
}

TEST(Scenario, DeviatedMembersAndSharedDeadline) {
  Stream rng(73);
  ScenarioDistribution dist;
  dist.slightly_deviated = 1;
  dist.highly_deviated = 2;
  dist.deviation_factor = 1.5;
  dist.shared_deadline = true;
  dist.epsilon = 0.1;
  for (int k = 0; k < 200; ++k) {
    const Scenario s = generate_scenario(dist, rng);
    EXPECT_EQ(s.team[0].behavior, Behavior::kSlightlyDeviated);
    EXPECT_EQ(s.team[1].behavior, Behavior::kHighlyDeviated);
    EXPECT_EQ(s.team[2].behavior, Behavior::kHighlyDeviated);
    EXPECT_EQ(s.team[3].behavior, Behavior::kStandard);
    EXPECT_DOUBLE_EQ(s.team[1].deviation, 1.5);
    EXPECT_EQ(s.opponent.params.deadline, s.team_deadline());
    for (const TeamMember& m : s.team) EXPECT_DOUBLE_EQ(m.params.epsilon, 0.1);
  }
}

TEST(Metrics, SummaryCountsGenuineMembersOnly) {
  NegotiationRecord rec;
  rec.agreement = true;
  rec.final_utilities = {0.9, 0.2, 0.6};
  rec.genuine = {true, false, true};
  const Sample s = summarize(rec);
  EXPECT_DOUBLE_EQ(s.min_utility, 0.6);
  EXPECT_DOUBLE_EQ(s.average_utility, 0.75);
  rec.agreement = false;
  const Sample failed = summarize(rec);
  EXPECT_FALSE(failed.agreement);
  EXPECT_EQ(failed.min_utility, 0.0);
  EXPECT_EQ(failed.average_utility, 0.0);
}

TEST(Metrics, RunningMeanMatchesTwoPass) {
  std::mt19937_64 rng(74);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(5000);
  RunningMean running;
  for (double& x : xs) {
    x = u(rng);
    running.add(x);
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double half = 1.96 * std::sqrt(ss / (xs.size() - 1)) /
                      std::sqrt(static_cast<double>(xs.size()));
  EXPECT_NEAR(running.mean(), mean, 1e-12);
  EXPECT_NEAR(running.half_width(), half, 1e-12);
  EXPECT_EQ(RunningMean().half_width(), 0.0);
}

TEST(Metrics, AccumulatorCountsFailures) {
  MetricsAccumulator acc;
  acc.add({true, 0.4, 0.6});
  acc.add({false, 0.0, 0.0});
  acc.add({true, 0.5, 0.9});
  acc.add({false, 0.0, 0.0});
  const MetricsRow r = acc.row();
  EXPECT_EQ(r.samples, 4u);
  EXPECT_EQ(r.failures, 2u);
  EXPECT_DOUBLE_EQ(r.failure_rate, 0.5);
  EXPECT_DOUBLE_EQ(r.mean_min, 0.225);
  EXPECT_DOUBLE_EQ(r.mean_ave, 0.375);
}

ExperimentConfig small(int experiment, unsigned workers) {
  ExperimentConfig c = scaled(default_config(experiment), 0.05);
  c.workers = workers;
  return c;
}

std::string metrics_csv(const ExperimentResult& r) {
  std::ostringstream out;
  write_metrics_csv(r, out);
  if (r.id == 1) write_curves_csv(r, out);
  return out.str();
}

TEST(Experiments, MetricIdentitiesAndUnanimityAudit) {
  for (int id = 1; id <= 4; ++id) {
    const ExperimentResult r = run_experiment(id, small(id, 0), 3);
    ASSERT_FALSE(r.rows.empty());
    for (const CellRow& row : r.rows) {
      const MetricsRow& m = row.metrics;
      EXPECT_GE(m.mean_ave, m.mean_min - 1e-12);
      EXPECT_EQ(m.failure_rate, static_cast<double>(m.failures) /
                                    static_cast<double>(m.samples));
      EXPECT_EQ(row.unanimity_violations, 0u) << row.model;
    }
  }
}

TEST(Experiments, DeterministicAcrossRunsAndWorkerCounts) {
  for (int id = 1; id <= 4; ++id) {
    const std::string a = metrics_csv(run_experiment(id, small(id, 1), 11));
    const std::string b = metrics_csv(run_experiment(id, small(id, 4), 11));
    const std::string c = metrics_csv(run_experiment(id, small(id, 4), 11));
    EXPECT_EQ(a, b) << "experiment " << id;
    EXPECT_EQ(b, c) << "experiment " << id;
    const std::string other = metrics_csv(run_experiment(id, small(id, 4), 12));
    EXPECT_NE(a, other) << "experiment " << id;
  }
}

TEST(Experiments, CurvesCoverEveryRound) {
  const ExperimentResult r = run_experiment(1, small(1, 0), 3);
  for (const char* model :
       {"FUM-perfect", "FUM-simple", "FUM-random", "RE", "SSV"}) {
    EXPECT_EQ(r.curve(model, Regime::kShort).size(), 11u) << model;
    EXPECT_EQ(r.curve(model, Regime::kLong).size(), 51u) << model;
  }
  // Opening offers of every member ask for everything.
  EXPECT_NEAR(r.curve("FUM-simple", Regime::kShort)[0], 0.0, 1e-12);
}

TEST(Experiments, ExperimentFourSkipsOversizedCounts) {
  ExperimentConfig c = small(4, 0);
  c.base.team_size = 2;
  const ExperimentResult r = run_experiment(4, c, 3);
  // Baseline plus 2 behaviors x 2 counts x 3 factors, in both regimes.
  EXPECT_EQ(r.rows.size(), 2u * (1 + 2 * 2 * 3));
}

TEST(Csv, FixedHeaders) {
  ExperimentResult r;
  std::ostringstream out;
  r.id = 1;
  write_metrics_csv(r, out);
  write_curves_csv(r, out);
  r.id = 2;
  write_metrics_csv(r, out);
  r.id = 3;
  write_metrics_csv(r, out);
  r.id = 4;
  write_metrics_csv(r, out);
  const std::string cols =
      "samples,mean_min,min_ci95,mean_ave,ave_ci95,failures,failure_rate,"
      "unanimity_violations\n";
  EXPECT_EQ(out.str(), "model,deadline," + cols +
                           "model,deadline,round,mean_u_op\n"
                           "model,deadline,epsilon," + cols +
                           "model,deadline,probability," + cols +
                           "model,deadline,behavior,deviated,d," + cols);
}

TEST(Csv, WritesFilesAndRejectsUnwritableDirectories) {
  const auto dir = std::filesystem::temp_directory_path() / "fum_csv_test";
  std::filesystem::remove_all(dir);
  const ExperimentResult r = run_experiment(1, small(1, 0), 3);
  const auto written = write_experiment_csv(r, dir / "nested");
  ASSERT_EQ(written.size(), 2u);
  EXPECT_EQ(written[0].filename(), "exp1_metrics.csv");
  EXPECT_EQ(written[1].filename(), "exp1_curves.csv");
  std::ifstream in(written[0]);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("model,deadline,samples", 0), 0u);
  // A regular file cannot hold a directory.
  std::ofstream(dir / "plain") << "x";
  EXPECT_ANY_THROW(write_experiment_csv(r, dir / "plain" / "out"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace fum::harness
