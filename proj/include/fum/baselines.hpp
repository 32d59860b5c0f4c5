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

#ifndef FUM_BASELINES_HPP_
#define FUM_BASELINES_HPP_

// Team strategies that do not guarantee unanimity, used as comparison points:
//
//  * Representative (RE): one member, drawn per negotiation, bargains alone
//    with its own utility function. By default it trades off like a
//    single-member SSV team, proposing the point of its iso-utility set
//    closest to the opponent's last offer; random iso-utility offers are
//    available for comparison.
//  * Similarity simple voting (SSV): every member proposes the point of its
//    own iso-utility set closest to the opponent's last offer, the team picks
//    one proposal by plurality and accepts opponent offers by majority.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "fum/agents.hpp"
#include "fum/mediator.hpp"
#include "fum/model.hpp"
#include "fum/strategy.hpp"

namespace fum {

enum class ReOffers { kSimilarity, kRandom };

// The offer a member likes best: every attribute at the team's end.
inline Offer favorite_offer(const UtilityProfile& profile) {
  std::vector<double> x(profile.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = team_extreme_value(profile.direction(j));
  }
  return Offer(std::move(x));
}

template <class Rng>
NegotiationRecord re_negotiate(const Scenario& scenario,
                               std::size_t representative,
                               const MediatorConfig& config, Rng& rng,
                               ReOffers offers = ReOffers::kSimilarity) {
  scenario.validate();
  if (representative >= scenario.team.size()) {
    throw StructuralError("representative index out of range");
  }
  NegotiationRecord rec;
  const std::span<const TeamMember> team = scenario.team;
  const TeamMember& rep = team[representative];
  const int last_round =
      std::min(scenario.team_deadline(), scenario.opponent.params.deadline);
  std::optional<Offer> last_opponent;
  for (int t = 0; t <= last_round && last_round > 0; ++t) {
    RoundLog log;
    log.round = t;
    if (offers == ReOffers::kRandom) {
      log.team_offer = iso_utility_offer(rep.profile, rep.aspiration(t),
                                         OfferMode::kRandom, rng);
    } else {
      log.team_offer = nearest_iso_utility_offer(
          rep.profile, rep.aspiration(t),
          last_opponent ? *last_opponent : favorite_offer(rep.profile));
    }
    log.opponent_utility_of_team_offer =
        utility(scenario.opponent.profile, log.team_offer);
    OpponentResponse reply = opponent_respond(
        scenario.opponent, log.team_offer, t, rng, config.acceptance_enabled);
    if (reply.accept) {
      log.opponent_accepted = true;
      rec.agreement = true;
      rec.final_round = t;
      rec.agreed_offer = log.team_offer;
      rec.acceptor = Acceptor::kOpponent;
      rec.rounds.push_back(std::move(log));
      break;
    }
    const bool vote = vote_on_offer(rep, *reply.counter, t);
    log.votes = {vote};
    log.team_accepted = config.acceptance_enabled && vote;
    last_opponent = reply.counter;
    log.counter_offer = std::move(reply.counter);
    rec.final_round = t;
    if (log.team_accepted) {
      rec.agreement = true;
      rec.agreed_offer = *log.counter_offer;
      rec.acceptor = Acceptor::kTeam;
      rec.rounds.push_back(std::move(log));
      break;
    }
    rec.rounds.push_back(std::move(log));
  }
  internal::finish_record(rec, team, scenario.opponent.profile);
  return rec;
}

// Representative drawn uniformly from the team.
template <class Rng>
NegotiationRecord re_negotiate(const Scenario& scenario,
                               const MediatorConfig& config, Rng& rng,
                               ReOffers offers = ReOffers::kSimilarity) {
  std::uniform_int_distribution<std::size_t> pick(0,
                                                  scenario.team.size() - 1);
  const std::size_t rep = pick(rng);
  return re_negotiate(scenario, rep, config, rng, offers);
}

struct SsvProposals {
  std::vector<Offer> candidates;
  std::vector<std::size_t> ballots;  // candidate index chosen by each member
  std::size_t winner = 0;
};

// One SSV proposal-and-vote step at round t.
inline SsvProposals ssv_proposals(std::span<const TeamMember> team,
                                  const std::optional<Offer>& last_opponent,
                                  const std::optional<Offer>& last_team,
                                  int t) {
  if (team.empty()) throw StructuralError("team has no members");
  SsvProposals out;
  for (const TeamMember& m : team) {
    Offer reference;
    if (last_opponent) {
      reference = *last_opponent;
    } else if (last_team) {
      reference = *last_team;
    } else {
      reference = favorite_offer(m.profile);
    }
    out.candidates.push_back(
        nearest_iso_utility_offer(m.profile, m.aspiration(t), reference));
  }
  std::vector<std::size_t> tally(team.size(), 0);
  for (const TeamMember& m : team) {
    std::size_t best = 0;
    double best_u = -1.0;
    for (std::size_t c = 0; c < out.candidates.size(); ++c) {
      const double u = utility(m.profile, out.candidates[c]);
      if (u > best_u) {
        best_u = u;
        best = c;
      }
    }
    out.ballots.push_back(best);
    ++tally[best];
  }
  out.winner = static_cast<std::size_t>(
      std::max_element(tally.begin(), tally.end()) - tally.begin());
  return out;
}

inline Offer ssv_round(std::span<const TeamMember> team,
                       const std::optional<Offer>& last_opponent,
                       const std::optional<Offer>& last_team, int t) {
  SsvProposals p = ssv_proposals(team, last_opponent, last_team, t);
  return std::move(p.candidates[p.winner]);
}

// Majority acceptance of opponent offers.
inline VoteThreshold ssv_threshold() { return VoteThreshold(0.5); }

template <class Rng>
NegotiationRecord ssv_negotiate(const Scenario& scenario,
                                const MediatorConfig& config, Rng& rng) {
  scenario.validate();
  NegotiationRecord rec;
  const std::span<const TeamMember> team = scenario.team;
  const int last_round =
      std::min(scenario.team_deadline(), scenario.opponent.params.deadline);
  std::optional<Offer> last_opponent;
  std::optional<Offer> last_team;
  const VoteThreshold threshold = ssv_threshold();
  for (int t = 0; t <= last_round && last_round > 0; ++t) {
    RoundLog log;
    log.round = t;
    log.team_offer = ssv_round(team, last_opponent, last_team, t);
    last_team = log.team_offer;
    log.opponent_utility_of_team_offer =
        utility(scenario.opponent.profile, log.team_offer);
    OpponentResponse reply = opponent_respond(
        scenario.opponent, log.team_offer, t, rng, config.acceptance_enabled);
    if (reply.accept) {
      log.opponent_accepted = true;
      rec.agreement = true;
      rec.final_round = t;
      rec.agreed_offer = log.team_offer;
      rec.acceptor = Acceptor::kOpponent;
      rec.rounds.push_back(std::move(log));
      break;
    }
    for (const TeamMember& m : team) {
      log.votes.push_back(vote_on_offer(m, *reply.counter, t));
    }
    log.team_accepted =
        config.acceptance_enabled && acceptance_vote(log.votes, threshold);
    last_opponent = reply.counter;
    log.counter_offer = std::move(reply.counter);
    rec.final_round = t;
    if (log.team_accepted) {
      rec.agreement = true;
      rec.agreed_offer = *log.counter_offer;
      rec.acceptor = Acceptor::kTeam;
      rec.rounds.push_back(std::move(log));
      break;
    }
    rec.rounds.push_back(std::move(log));
  }
  internal::finish_record(rec, team, scenario.opponent.profile);
  return rec;
}

}  // namespace fum

#endif  // FUM_BASELINES_HPP_
