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

#ifndef FUM_HARNESS_SELFTEST_HPP_
#define FUM_HARNESS_SELFTEST_HPP_

// Randomized invariant checks runnable from the command line.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fum/harness/scenario.hpp"
#include "fum/harness/seeding.hpp"
#include "fum/mediator.hpp"

namespace fum::harness {

struct CheckResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  bool passed() const { return violations == 0; }
};

// Random team of standard members with mixed directions and budgets.
template <class Rng>
std::vector<TeamMember> random_team(std::size_t members, std::size_t n,
                                    int deadline, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Direction> dirs(n);
  for (auto& d : dirs) d = coin(rng) ? Direction::kIncreasing
                                     : Direction::kDecreasing;
  const double beta = uniform(0.2, 3.0, rng);
  std::vector<TeamMember> team;
  for (std::size_t i = 0; i < members; ++i) {
    TeamMember m;
    m.profile =
        UtilityProfile(simplex_weights(static_cast<int>(n), rng), dirs);
    m.params.deadline = deadline;
    m.params.beta = beta;
    m.params.epsilon = uniform(0.0, 0.5, rng);
    m.params.ru = uniform(0.0, 1.0 - m.params.epsilon, rng);
    team.push_back(std::move(m));
  }
  return team;
}

// Every standard member's utility of a constructed offer meets its
// aspiration, for random teams, rounds and agendas.
inline CheckResult check_unanimity(std::size_t trials, std::uint64_t seed) {
  CheckResult r{"unanimity of constructed offers", trials, 0};
  Stream rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t m = size(rng);
    const std::size_t n = size(rng);
    const int deadline = std::uniform_int_distribution<int>(1, 60)(rng);
    const int t = std::uniform_int_distribution<int>(0, deadline)(rng);
    const auto team = random_team(m, n, deadline, rng);
    const InterestMatrix interest = run_prenegotiation(team, n);
    const Agenda agenda = random_agenda(n, rng);
    const Offer offer = construct_offer<Stream>(team, interest, agenda, t, rng);
    for (const TeamMember& member : team) {
      if (utility(member.profile, offer) <
          member.aspiration(t) - kUtilityTolerance) {
        ++r.violations;
      }
    }
  }
  return r;
}

// With unanimous voting an opponent offer passes iff every vote is positive.
inline CheckResult check_vote_soundness(std::size_t max_members = 6) {
  CheckResult r{"unanimous vote soundness", 0, 0};
  const VoteThreshold unanimous(1.0);
  for (std::size_t m = 1; m <= max_members; ++m) {
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      std::vector<bool> votes(m);
      for (std::size_t i = 0; i < m; ++i) votes[i] = (mask >> i) & 1u;
      const bool all = mask == (1u << m) - 1;
      ++r.trials;
      if (acceptance_vote(votes, unanimous) != all) ++r.violations;
    }
  }
  return r;
}

// Members planted by the opponent bid weakly in the opponent's favor; the
// constructed offer must equal the one built by the genuine members alone.
// Single-attribute instances draw planted demands below every genuine one;
// wider instances plant members with nothing to ask for.
inline CheckResult check_opponent_infiltration(std::size_t trials,
                                               std::uint64_t seed) {
  CheckResult r{"opponent infiltration robustness", trials, 0};
  Stream rng(seed);
  std::uniform_int_distribution<std::size_t> members(1, 6);
  std::uniform_int_distribution<std::size_t> attributes(1, 4);
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t n = attributes(rng);
    const int deadline = std::uniform_int_distribution<int>(1, 30)(rng);
    auto genuine = random_team(members(rng), n, deadline, rng);
    int t = std::uniform_int_distribution<int>(0, deadline)(rng);
    double floor = 1.0;
    if (n == 1) {
      t = deadline;
      for (const TeamMember& m : genuine) floor = std::min(floor, m.aspiration(t));
    }
    const std::size_t planted =
        std::uniform_int_distribution<std::size_t>(1, genuine.size())(rng);
    std::vector<TeamMember> mixed = genuine;
    for (std::size_t p = 0; p < planted; ++p) {
      TeamMember spy = genuine.front();
      spy.params.beta = 1.0;
      if (n == 1) {
        spy.params.epsilon = 0.0;
        spy.params.ru = uniform(0.0, floor, rng);
      } else {
        spy.params.epsilon = 1.0;
        spy.params.ru = 0.0;
      }
      const auto at = std::uniform_int_distribution<std::size_t>(
          0, mixed.size())(rng);
      mixed.insert(mixed.begin() + static_cast<std::ptrdiff_t>(at), spy);
    }
    const Agenda agenda = random_agenda(n, rng);
    const Offer alone = construct_offer<Stream>(
        genuine, InterestMatrix(genuine.size(), n), agenda, t, rng);
    const Offer infiltrated = construct_offer<Stream>(
        mixed, InterestMatrix(mixed.size(), n), agenda, t, rng);
    if (!(alone == infiltrated)) ++r.violations;
  }
  return r;
}

// Single member, single attribute, linear curves over ten rounds: agreement
// at round 5 on 0.5.
inline CheckResult check_hand_trace() {
  CheckResult r{"hand-traced negotiation", 1, 0};
  Scenario s;
  TeamMember m;
  m.profile = UtilityProfile::uniform_direction({1.0}, Direction::kIncreasing);
  m.params = make_params(10, 1.0, 0.0);
  s.team.push_back(m);
  s.opponent.profile =
      UtilityProfile::uniform_direction({1.0}, Direction::kDecreasing);
  s.opponent.params = make_params(10, 1.0, 0.0);
  s.opponent.mode = OfferMode::kUniform;
  Stream rng(0);
  const NegotiationRecord rec = run_negotiation(s, MediatorConfig{}, rng);
  if (!rec.agreement || rec.final_round != 5 || (*rec.agreed_offer)[0] != 0.5) {
    r.violations = 1;
  }
  return r;
}

inline std::vector<CheckResult> run_selftest(std::uint64_t seed = 1) {
  return {check_unanimity(10000, seed), check_vote_soundness(),
          check_opponent_infiltration(5000, seed + 1), check_hand_trace()};
}

}  // namespace fum::harness

#endif  // FUM_HARNESS_SELFTEST_HPP_
