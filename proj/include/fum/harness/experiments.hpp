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

#ifndef FUM_HARNESS_EXPERIMENTS_HPP_
#define FUM_HARNESS_EXPERIMENTS_HPP_

// The four experiment pipelines. Every cell replays the same teams,
// opponents and per-negotiation streams, so cells differ only in the factor
// under study. A cell's output is a pure function of (config, master seed).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "fum/baselines.hpp"
#include "fum/harness/config.hpp"
#include "fum/harness/metrics.hpp"
#include "fum/harness/scenario.hpp"
#include "fum/harness/seeding.hpp"
#include "fum/mediator.hpp"

namespace fum::harness {

enum class Regime { kShort = 0, kLong = 1 };

inline const char* to_string(Regime r) {
  return r == Regime::kShort ? "short" : "long";
}

template <class Rng>
NegotiationRecord run_model(const Scenario& scenario, TeamModel model,
                            const MediatorConfig& mediator, Rng& rng,
                            ReOffers re_offers = ReOffers::kSimilarity) {
  switch (model) {
    case TeamModel::kFum:
      return run_negotiation(scenario, mediator, rng);
    case TeamModel::kRepresentative:
      return re_negotiate(scenario, mediator, rng, re_offers);
    case TeamModel::kSimilarityVoting:
      return ssv_negotiate(scenario, mediator, rng);
  }
  return run_negotiation(scenario, mediator, rng);
}

// Counts breaches of the unanimity guarantee by standard members: every
// constructed offer must meet their aspiration for its round, and under
// unanimous voting an accepted opponent offer must meet next round's.
inline std::size_t audit_unanimity(const Scenario& scenario,
                                   const NegotiationRecord& rec,
                                   const VoteThreshold& threshold) {
  std::size_t violations = 0;
  for (const RoundLog& log : rec.rounds) {
    for (const TeamMember& m : scenario.team) {
      if (m.behavior != Behavior::kStandard) continue;
      if (utility(m.profile, log.team_offer) <
          m.aspiration(log.round) - kUtilityTolerance) {
        ++violations;
      }
      if (log.team_accepted && threshold.fraction() >= 1.0 &&
          utility(m.profile, *log.counter_offer) <
              m.aspiration(log.round + 1) - kUtilityTolerance) {
        ++violations;
      }
    }
  }
  return violations;
}

struct CellSpec {
  std::string model_name;
  TeamModel model = TeamModel::kFum;
  ReOffers re_offers = ReOffers::kSimilarity;
  MediatorConfig mediator;
  ScenarioDistribution dist;
  Regime regime = Regime::kShort;
  DeadlineLaw deadline;
  // Record the opponent's utility of every team offer, for demand curves.
  bool record_curve = false;
};

struct CellResult {
  MetricsRow metrics;
  std::vector<double> curve;  // mean opponent utility per round
  std::size_t unanimity_violations = 0;
};

template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline CellResult run_cell(const CellSpec& spec, std::uint64_t seed,
                           unsigned workers = 0) {
  const ScenarioDistribution& dist = spec.dist;
  const auto regime = static_cast<std::uint64_t>(spec.regime);
  std::vector<TeamDraw> teams;
  for (int i = 0; i < dist.teams; ++i) {
    Stream rng = make_stream(seed, {kTeamDomain, regime,
                                    static_cast<std::uint64_t>(i)});
    teams.push_back(draw_team(dist, spec.deadline, rng));
  }
  std::vector<Opponent> opponents;
  for (int o = 0; o < dist.opponents; ++o) {
    Stream rng = make_stream(seed, {kOpponentDomain, regime,
                                    static_cast<std::uint64_t>(o)});
    opponents.push_back(draw_opponent(dist, spec.deadline, rng));
  }

  const auto total = static_cast<std::size_t>(dist.negotiations());
  std::vector<Sample> samples(total);
  std::vector<std::vector<double>> curves(spec.record_curve ? total : 0);
  std::vector<std::size_t> violations(total, 0);
  parallel_for(total, workers, [&](std::size_t index) {
    const std::size_t rep = index % dist.repetitions;
    const std::size_t opp = (index / dist.repetitions) % dist.opponents;
    const std::size_t team = index / (dist.repetitions * dist.opponents);
    Stream rng = make_stream(seed, {kNegotiationDomain, regime, team, opp, rep});
    const Scenario scenario =
        assemble_scenario(dist, teams[team], opponents[opp], rng);
    const NegotiationRecord rec =
        run_model(scenario, spec.model, spec.mediator, rng, spec.re_offers);
    samples[index] = summarize(rec);
    if (spec.model == TeamModel::kFum) {
      violations[index] =
          audit_unanimity(scenario, rec, spec.mediator.threshold);
    }
    if (spec.record_curve) {
      for (const RoundLog& log : rec.rounds) {
        curves[index].push_back(log.opponent_utility_of_team_offer);
      }
    }
  });

  CellResult result;
  MetricsAccumulator acc;
  for (const Sample& s : samples) acc.add(s);
  result.metrics = acc.row();
  for (std::size_t v : violations) result.unanimity_violations += v;
  if (spec.record_curve) {
    std::vector<double> sum;
    std::vector<std::size_t> count;
    for (const auto& c : curves) {
      if (c.size() > sum.size()) {
        sum.resize(c.size(), 0.0);
        count.resize(c.size(), 0);
      }
      for (std::size_t t = 0; t < c.size(); ++t) {
        sum[t] += c[t];
        ++count[t];
      }
    }
    for (std::size_t t = 0; t < sum.size(); ++t) {
      result.curve.push_back(sum[t] / static_cast<double>(count[t]));
    }
  }
  return result;
}

struct CellRow {
  std::string model;
  Regime regime = Regime::kShort;
  double parameter = 0.0;  // epsilon, P or d depending on the experiment
  std::string behavior;    // experiment 4 only
  int count = 0;           // deviated members, experiment 4 only
  MetricsRow metrics;
  std::size_t unanimity_violations = 0;
};

struct CurveRow {
  std::string model;
  Regime regime = Regime::kShort;
  int round = 0;
  double mean_u_op = 0.0;
};

struct ExperimentResult {
  int id = 0;
  std::vector<CellRow> rows;
  std::vector<CurveRow> curves;  // experiment 1 only

  const CellRow* find(const std::string& model, Regime regime,
                      double parameter = 0.0, const std::string& behavior = "",
                      int count = 0) const {
    for (const CellRow& r : rows) {
      if (r.model == model && r.regime == regime &&
          std::abs(r.parameter - parameter) < 1e-9 && r.behavior == behavior &&
          r.count == count) {
        return &r;
      }
    }
    return nullptr;
  }

  std::vector<double> curve(const std::string& model, Regime regime) const {
    std::vector<double> out;
    for (const CurveRow& c : curves) {
      if (c.model == model && c.regime == regime) out.push_back(c.mean_u_op);
    }
    return out;
  }
};

// Shrinks the team count; opponents and repetitions keep their counts.
inline ExperimentConfig scaled(ExperimentConfig config, double scale) {
  if (!(scale > 0.0)) throw ConfigError("scale", "must be positive");
  config.base.teams = std::max(
      1, static_cast<int>(std::lround(config.base.teams * scale)));
  return config;
}

namespace internal {

inline MediatorConfig fum_mediator(const ExperimentConfig& config,
                                   AgendaPolicy policy, double threshold) {
  MediatorConfig m;
  m.agenda = policy;
  m.agenda.window = config.agenda.window;
  m.threshold = VoteThreshold(threshold);
  return m;
}

inline CellSpec base_cell(const ExperimentConfig& config, Regime regime) {
  CellSpec spec;
  spec.dist = config.base;
  spec.regime = regime;
  spec.re_offers = config.re_offers;
  spec.deadline =
      regime == Regime::kShort ? config.short_deadline : config.long_deadline;
  return spec;
}

inline CellRow make_row(const CellSpec& spec, const CellResult& result) {
  CellRow row;
  row.model = spec.model_name;
  row.regime = spec.regime;
  row.metrics = result.metrics;
  row.unanimity_violations = result.unanimity_violations;
  return row;
}

}  // namespace internal

// Agenda study. Phase A disables acceptance and records the opponent's
// utility of each team offer per round; phase B negotiates normally.
inline ExperimentResult run_experiment_1(const ExperimentConfig& config,
                                         std::uint64_t seed) {
  struct ModelSpec {
    const char* name;
    TeamModel model;
    AgendaPolicy agenda;
  };
  const ModelSpec models[] = {
      {"FUM-perfect", TeamModel::kFum, AgendaPolicy::perfect()},
      {"FUM-simple", TeamModel::kFum, AgendaPolicy::simple_learning()},
      {"FUM-random", TeamModel::kFum, AgendaPolicy::random()},
      {"RE", TeamModel::kRepresentative, AgendaPolicy::simple_learning()},
      {"SSV", TeamModel::kSimilarityVoting, AgendaPolicy::simple_learning()},
  };
  ExperimentResult out;
  out.id = 1;
  for (Regime regime : {Regime::kShort, Regime::kLong}) {
    for (const ModelSpec& m : models) {
      CellSpec spec = internal::base_cell(config, regime);
      spec.model_name = m.name;
      spec.model = m.model;
      spec.mediator = internal::fum_mediator(config, m.agenda, 1.0);

      CellSpec phase_a = spec;
      phase_a.mediator.acceptance_enabled = false;
      phase_a.record_curve = true;
      const CellResult curve = run_cell(phase_a, seed, config.workers);
      for (std::size_t t = 0; t < curve.curve.size(); ++t) {
        out.curves.push_back(
            {m.name, regime, static_cast<int>(t), curve.curve[t]});
      }
      out.rows.push_back(
          internal::make_row(spec, run_cell(spec, seed, config.workers)));
    }
  }
  return out;
}

// Handover budget sweep with the learned agenda.
inline ExperimentResult run_experiment_2(const ExperimentConfig& config,
                                         std::uint64_t seed) {
  ExperimentResult out;
  out.id = 2;
  for (Regime regime : {Regime::kShort, Regime::kLong}) {
    for (double eps : config.epsilons) {
      CellSpec spec = internal::base_cell(config, regime);
      spec.model_name = "FUM-simple";
      spec.dist.epsilon = eps;
      spec.mediator = internal::fum_mediator(
          config, AgendaPolicy::simple_learning(), 1.0);
      CellRow row =
          internal::make_row(spec, run_cell(spec, seed, config.workers));
      row.parameter = eps;
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

// Infiltration sweep under unanimous, 75% and 50% acceptance.
inline ExperimentResult run_experiment_3(const ExperimentConfig& config,
                                         std::uint64_t seed) {
  const std::pair<const char*, double> models[] = {
      {"FUM", 1.0}, {"FUM75", 0.75}, {"FUM50", 0.5}};
  ExperimentResult out;
  out.id = 3;
  for (Regime regime : {Regime::kShort, Regime::kLong}) {
    for (const auto& [name, threshold] : models) {
      for (double p : config.infiltration_probabilities) {
        CellSpec spec = internal::base_cell(config, regime);
        spec.model_name = name;
        spec.dist.epsilon = 0.0;
        spec.dist.infiltration_probability = p;
        spec.mediator = internal::fum_mediator(
            config, AgendaPolicy::simple_learning(), threshold);
        CellRow row =
            internal::make_row(spec, run_cell(spec, seed, config.workers));
        row.parameter = p;
        out.rows.push_back(std::move(row));
      }
    }
  }
  return out;
}

// Deviation sweep: all-standard baseline, then slightly and highly deviated
// member counts crossed with demand multipliers.
inline ExperimentResult run_experiment_4(const ExperimentConfig& config,
                                         std::uint64_t seed) {
  ExperimentResult out;
  out.id = 4;
  for (Regime regime : {Regime::kShort, Regime::kLong}) {
    auto run = [&](const std::string& behavior, int count, double d) {
      CellSpec spec = internal::base_cell(config, regime);
      spec.model_name = "FUM-simple";
      spec.dist.slightly_deviated = behavior == "slightly" ? count : 0;
      spec.dist.highly_deviated = behavior == "highly" ? count : 0;
      spec.dist.deviation_factor = d;
      spec.mediator = internal::fum_mediator(
          config, AgendaPolicy::simple_learning(), 1.0);
      CellRow row =
          internal::make_row(spec, run_cell(spec, seed, config.workers));
      row.parameter = d;
      row.behavior = behavior;
      row.count = count;
      out.rows.push_back(std::move(row));
    };
    run("standard", config.base.team_size, 1.0);
    for (const char* behavior : {"slightly", "highly"}) {
      for (int count : config.deviated_counts) {
        if (count > config.base.team_size) continue;
        for (double d : config.deviation_factors) run(behavior, count, d);
      }
    }
  }
  return out;
}

inline ExperimentResult run_experiment(int id, const ExperimentConfig& config,
                                       std::uint64_t seed) {
  switch (id) {
    case 1: return run_experiment_1(config, seed);
    case 2: return run_experiment_2(config, seed);
    case 3: return run_experiment_3(config, seed);
    case 4: return run_experiment_4(config, seed);
    default:
      throw ConfigError("experiment", "expected 1, 2, 3 or 4");
  }
}

}  // namespace fum::harness

#endif  // FUM_HARNESS_EXPERIMENTS_HPP_
