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

#ifndef FUM_HARNESS_SCENARIO_HPP_
#define FUM_HARNESS_SCENARIO_HPP_

// Random teams, opponents and negotiation scenarios. Teams value every
// attribute increasingly and opponents decreasingly; weights are uniform on
// the probability simplex.

#include <algorithm>
#include <random>
#include <vector>

#include "fum/agents.hpp"
#include "fum/harness/config.hpp"
#include "fum/mediator.hpp"

namespace fum::harness {

// Normalized exponential spacings give a uniform draw on the simplex.
template <class Rng>
std::vector<double> simplex_weights(int n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& x : w) {
    x = expo(rng);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

template <class Rng>
double uniform(double lo, double hi, Rng& rng) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <class Rng>
int uniform_int(const DeadlineLaw& law, Rng& rng) {
  if (law.min == law.max) return law.min;
  return std::uniform_int_distribution<int>(law.min, law.max)(rng);
}

// A team before per-negotiation adjustments (epsilon, saboteurs, deviation).
struct TeamDraw {
  std::vector<UtilityProfile> profiles;
  std::vector<double> ru;
  int deadline = 0;
  double beta = 1.0;
};

template <class Rng>
TeamDraw draw_team(const ScenarioDistribution& dist, const DeadlineLaw& law,
                   Rng& rng) {
  TeamDraw team;
  team.deadline = uniform_int(law, rng);
  team.beta = uniform(dist.beta_min, dist.beta_max, rng);
  for (int i = 0; i < dist.team_size; ++i) {
    team.profiles.push_back(UtilityProfile::uniform_direction(
        simplex_weights(dist.attributes, rng), Direction::kIncreasing));
    team.ru.push_back(uniform(dist.ru_min, dist.ru_max, rng));
  }
  return team;
}

template <class Rng>
Opponent draw_opponent(const ScenarioDistribution& dist, const DeadlineLaw& law,
                       Rng& rng) {
  Opponent op;
  NegotiatorParams p;
  p.deadline = uniform_int(law, rng);
  p.beta = uniform(dist.beta_min, dist.beta_max, rng);
  op.profile = UtilityProfile::uniform_direction(
      simplex_weights(dist.attributes, rng), Direction::kDecreasing);
  p.ru = uniform(dist.ru_min, dist.ru_max, rng);
  p.validate();
  op.params = p;
  op.mode = dist.opponent_mode;
  return op;
}

// Applies the per-negotiation parts of the distribution: the shared epsilon,
// one infiltrated competitor with probability P, and deviated members (the
// lowest indices, slightly deviated first).
template <class Rng>
Scenario assemble_scenario(const ScenarioDistribution& dist,
                           const TeamDraw& draw, const Opponent& opponent,
                           Rng& rng) {
  Scenario s;
  s.opponent = opponent;
  if (dist.shared_deadline) s.opponent.params.deadline = draw.deadline;
  const std::size_t m = draw.profiles.size();
  for (std::size_t i = 0; i < m; ++i) {
    TeamMember member;
    member.profile = draw.profiles[i];
    member.params.deadline = draw.deadline;
    member.params.beta = draw.beta;
    member.params.epsilon = dist.epsilon;
    member.params.ru = std::min(draw.ru[i], 1.0 - dist.epsilon);
    s.team.push_back(std::move(member));
  }
  const int sd = std::min<int>(dist.slightly_deviated, static_cast<int>(m));
  const int hd =
      std::min<int>(dist.highly_deviated, static_cast<int>(m) - sd);
  for (int i = 0; i < sd; ++i) {
    s.team[i].behavior = Behavior::kSlightlyDeviated;
    s.team[i].deviation = dist.deviation_factor;
  }
  for (int i = sd; i < sd + hd; ++i) {
    s.team[i].behavior = Behavior::kHighlyDeviated;
    s.team[i].deviation = dist.deviation_factor;
  }
  if (dist.infiltration_probability > 0.0) {
    std::bernoulli_distribution infiltrated(dist.infiltration_probability);
    if (infiltrated(rng)) {
      std::uniform_int_distribution<std::size_t> who(0, m - 1);
      TeamMember& saboteur = s.team[who(rng)];
      saboteur.behavior = Behavior::kInfiltratedCompetitor;
      saboteur.deviation = 1.0;
      saboteur.params.ru =
          std::min(uniform(dist.infiltrator_ru_min, dist.infiltrator_ru_max,
                           rng),
                   1.0 - dist.epsilon);
    }
  }
  for (const TeamMember& member : s.team) member.params.validate();
  return s;
}

// One scenario from a single stream.
template <class Rng>
Scenario generate_scenario(const ScenarioDistribution& dist, Rng& rng) {
  const TeamDraw team = draw_team(dist, dist.deadline, rng);
  const Opponent op = draw_opponent(dist, dist.deadline, rng);
  return assemble_scenario(dist, team, op, rng);
}

}  // namespace fum::harness

#endif  // FUM_HARNESS_SCENARIO_HPP_
