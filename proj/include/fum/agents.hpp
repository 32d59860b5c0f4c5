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

#ifndef FUM_AGENTS_HPP_
#define FUM_AGENTS_HPP_

// Behaviors that answer the mediator's petitions: standard and deviated team
// members, infiltrated competitors, and the time-dependent opponent.

#include <optional>
#include <string_view>

#include "fum/model.hpp"
#include "fum/strategy.hpp"

namespace fum {

enum class Behavior {
  kStandard,
  kSlightlyDeviated,
  kHighlyDeviated,
  // Saboteur with an unexpectedly high reservation utility that rejects
  // every opponent offer.
  kInfiltratedCompetitor,
};

inline std::string_view to_string(Behavior b) {
  switch (b) {
    case Behavior::kStandard: return "standard";
    case Behavior::kSlightlyDeviated: return "slightly-deviated";
    case Behavior::kHighlyDeviated: return "highly-deviated";
    case Behavior::kInfiltratedCompetitor: return "infiltrator";
  }
  return "?";
}

struct TeamMember {
  UtilityProfile profile;
  NegotiatorParams params;
  Behavior behavior = Behavior::kStandard;
  // Demand multiplier for deviated behaviors.
  double deviation = 1.0;

  double aspiration(int t) const { return team_aspiration(params, t); }
  bool genuine() const {
    return behavior != Behavior::kInfiltratedCompetitor;
  }
};

// Per-round construction state of one member; reset every round.
struct MemberRoundState {
  bool active = true;
  bool satisfied = false;
  bool extra_placed = false;
};

template <class Rng>
double respond_bid(const TeamMember& member, MemberRoundState& state,
                   std::size_t j, const PartialOffer& partial, int t,
                   Rng& rng) {
  const double aspiration = member.aspiration(t);
  switch (member.behavior) {
    case Behavior::kStandard:
    case Behavior::kInfiltratedCompetitor:
      return bid_value(member.profile, j, partial, aspiration);
    case Behavior::kSlightlyDeviated:
      return deviated_bid(member.profile, j, partial, aspiration,
                          {DeviationMode::kSlightlyDeviated, member.deviation});
    case Behavior::kHighlyDeviated:
      if (state.satisfied) {
        if (partial.is_assigned(j)) {
          throw ProtocolError("bid requested for an attribute already set");
        }
        state.extra_placed = true;
        return extra_demand(member.profile, j, rng);
      }
      return deviated_bid(member.profile, j, partial, aspiration,
                          {DeviationMode::kHighlyDeviated, member.deviation});
  }
  return bid_value(member.profile, j, partial, aspiration);
}

// True when the member is done with this round's construction and leaves
// the active set.
inline bool respond_partial_check(const TeamMember& member,
                                  MemberRoundState& state,
                                  const PartialOffer& partial, int t) {
  const bool reached = partial_utility(member.profile, partial) >=
                       member.aspiration(t) - kUtilityTolerance;
  if (member.behavior != Behavior::kHighlyDeviated) return reached;
  // A highly deviated member stays for one extra attribute once satisfied.
  if (reached) state.satisfied = true;
  return state.satisfied && state.extra_placed;
}

// Private vote on an opponent offer against the next round's aspiration.
inline bool vote_on_offer(const TeamMember& member, const Offer& offer, int t) {
  if (member.behavior == Behavior::kInfiltratedCompetitor) return false;
  return accepts(member.aspiration(t + 1), utility(member.profile, offer));
}

struct Opponent {
  UtilityProfile profile;
  NegotiatorParams params;
  OfferMode mode = OfferMode::kRandom;

  double aspiration(int t) const { return opponent_aspiration(params, t); }
};

struct OpponentResponse {
  bool accept = false;
  std::optional<Offer> counter;
};

// Accepts when the team offer is worth at least the next round's demand,
// otherwise counters with an offer at the current demand.
template <class Rng>
OpponentResponse opponent_respond(const Opponent& op, const Offer& team_offer,
                                  int t, Rng& rng,
                                  bool acceptance_enabled = true) {
  if (acceptance_enabled &&
      accepts(op.aspiration(t + 1), utility(op.profile, team_offer))) {
    return {true, std::nullopt};
  }
  return {false, iso_utility_offer(op.profile, op.aspiration(t), op.mode, rng)};
}

}  // namespace fum

#endif  // FUM_AGENTS_HPP_
