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

#ifndef FUM_MEDIATOR_HPP_
#define FUM_MEDIATOR_HPP_

// The trusted mediator. It runs the pre-negotiation handover of decision
// rights, builds the team offer attribute by attribute, counts votes on
// opponent offers, learns an agenda from observed concessions and drives the
// alternating-offers state machine against the opponent.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fum/agents.hpp"
#include "fum/model.hpp"
#include "fum/strategy.hpp"

namespace fum {

// Order in which the mediator sets attributes.
class Agenda {
 public:
  Agenda() = default;
  explicit Agenda(std::vector<std::size_t> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (std::size_t j : order_) {
      if (j >= order_.size() || seen[j]) {
        throw StructuralError("agenda is not a permutation");
      }
      seen[j] = true;
    }
  }

  static Agenda identity(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return Agenda(std::move(order));
  }

  std::size_t size() const { return order_.size(); }
  std::span<const std::size_t> order() const { return order_; }
  auto begin() const { return order_.begin(); }
  auto end() const { return order_.end(); }

 private:
  std::vector<std::size_t> order_;
};

struct AgendaPolicy {
  enum class Kind { kPerfect, kSimpleLearning, kRandom };

  Kind kind = Kind::kSimpleLearning;
  // Opponent offers considered by the learner; 0 selects floor(T_A / 4).
  int window = 0;

  static AgendaPolicy perfect() { return {Kind::kPerfect, 0}; }
  static AgendaPolicy simple_learning(int window = 0) {
    return {Kind::kSimpleLearning, window};
  }
  static AgendaPolicy random() { return {Kind::kRandom, 0}; }

  int effective_window(int team_deadline) const {
    return window > 0 ? window : std::max(1, team_deadline / 4);
  }
};

// Fraction of members whose positive vote accepts an opponent offer.
class VoteThreshold {
 public:
  explicit VoteThreshold(double fraction = 1.0) : fraction_(fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
      throw DomainError("vote threshold must lie in (0,1]");
    }
  }

  double fraction() const { return fraction_; }
  std::size_t required(std::size_t members) const {
    return static_cast<std::size_t>(
        std::ceil(fraction_ * static_cast<double>(members) - 1e-9));
  }

 private:
  double fraction_;
};

// Accumulated team-favorable movement per attribute over the opponent's
// first offers.
struct ConcessionLedger {
  std::vector<double> totals;
  int observed = 0;
  std::optional<Offer> last;

  explicit ConcessionLedger(std::size_t attributes = 0)
      : totals(attributes, 0.0) {}
};

struct Scenario {
  std::vector<TeamMember> team;
  Opponent opponent;

  std::size_t attributes() const { return opponent.profile.size(); }
  int team_deadline() const {
    return team.empty() ? 0 : team.front().params.deadline;
  }
  std::vector<Direction> team_directions() const {
    const auto dirs = team.front().profile.directions();
    return {dirs.begin(), dirs.end()};
  }

  void validate() const {
    if (team.empty()) throw StructuralError("team has no members");
    const std::size_t n = attributes();
    const auto dirs = team_directions();
    for (const TeamMember& m : team) {
      if (m.profile.size() != n) {
        throw StructuralError("member profile length mismatch");
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (m.profile.direction(j) != dirs[j]) {
          throw StructuralError("team members disagree on a direction");
        }
      }
      if (m.params.deadline != team_deadline()) {
        throw StructuralError("team members must share the team deadline");
      }
      m.params.validate();
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (opponent.profile.direction(j) != opposite(dirs[j])) {
        throw StructuralError("opponent direction must oppose the team's");
      }
    }
    opponent.params.validate();
  }
};

struct MediatorConfig {
  AgendaPolicy agenda = AgendaPolicy::simple_learning();
  VoteThreshold threshold{1.0};
  // Phase-A studies disable acceptance on both sides.
  bool acceptance_enabled = true;
  bool record_construction = false;
};

inline InterestMatrix run_prenegotiation(std::span<const TeamMember> team,
                                         std::size_t attributes) {
  if (team.empty()) throw ProtocolError("pre-negotiation needs a team");
  InterestMatrix interest(team.size(), attributes);
  for (std::size_t i = 0; i < team.size(); ++i) {
    if (team[i].profile.size() != attributes) {
      throw ProtocolError("member " + std::to_string(i) +
                          " answered for a different attribute count");
    }
    for (std::size_t j :
         select_handover_set(team[i].profile, team[i].params.epsilon)) {
      interest.relinquish(i, j);
    }
  }
  return interest;
}

// The value of attribute j the opponent likes most.
inline double best_value_for_opponent(Direction team_direction) {
  return invert_valuation(team_direction, 0.0);
}

// Iterated offer construction for round t. Every member that is still active
// and holds rights on the next agenda attribute bids for it; the most
// team-favorable bid wins; members whose aspiration is met leave.
template <class Rng>
Offer construct_offer(std::span<const TeamMember> team,
                      const InterestMatrix& interest, const Agenda& agenda,
                      int t, Rng& rng,
                      std::vector<ConstructionStep>* steps = nullptr) {
  const std::size_t n = agenda.size();
  PartialOffer partial(n);
  std::vector<MemberRoundState> state(team.size());
  const auto dirs = team.front().profile.directions();
  for (std::size_t j : agenda) {
    std::optional<double> chosen;
    ConstructionStep step;
    step.attribute = j;
    for (std::size_t i = 0; i < team.size(); ++i) {
      if (!state[i].active || !interest.retained(i, j)) continue;
      const double x = respond_bid(team[i], state[i], j, partial, t, rng);
      if (steps) step.bids.emplace_back(i, x);
      if (!chosen) {
        chosen = x;
      } else if (dirs[j] == Direction::kIncreasing) {
        chosen = std::max(*chosen, x);
      } else {
        chosen = std::min(*chosen, x);
      }
    }
    const double value = chosen.value_or(best_value_for_opponent(dirs[j]));
    partial.assign(j, value);
    for (std::size_t i = 0; i < team.size(); ++i) {
      if (!state[i].active) continue;
      if (respond_partial_check(team[i], state[i], partial, t)) {
        state[i].active = false;
        if (steps) step.left.push_back(i);
      }
    }
    if (steps) {
      step.value = value;
      step.opponent_default = !chosen.has_value();
      steps->push_back(std::move(step));
    }
  }
  return partial.to_offer();
}

// Counts positive votes against ceil(fraction * members). With fraction 1
// this is the unanimity rule.
inline bool acceptance_vote(const std::vector<bool>& votes,
                            const VoteThreshold& threshold,
                            std::size_t members) {
  if (votes.size() != members) {
    throw ProtocolError("expected " + std::to_string(members) +
                        " votes, got " + std::to_string(votes.size()));
  }
  const auto positive =
      static_cast<std::size_t>(std::count(votes.begin(), votes.end(), true));
  return positive >= threshold.required(members);
}

inline bool acceptance_vote(const std::vector<bool>& votes,
                            const VoteThreshold& threshold) {
  return acceptance_vote(votes, threshold, votes.size());
}

inline void update_ledger(ConcessionLedger& ledger, const Offer& previous,
                          const Offer& next,
                          std::span<const Direction> team_directions) {
  if (previous.size() != next.size() ||
      previous.size() != team_directions.size() ||
      ledger.totals.size() != next.size()) {
    throw StructuralError("ledger update length mismatch");
  }
  for (std::size_t j = 0; j < next.size(); ++j) {
    const double moved = valuation(team_directions[j], next[j]) -
                         valuation(team_directions[j], previous[j]);
    ledger.totals[j] += std::max(0.0, moved);
  }
}

// Records a newly received opponent offer, accumulating concessions while
// the learner's window is still open.
inline void observe_opponent_offer(ConcessionLedger& ledger, const Offer& offer,
                                   std::span<const Direction> team_directions,
                                   int window) {
  ++ledger.observed;
  if (ledger.last && ledger.observed <= window) {
    update_ledger(ledger, *ledger.last, offer, team_directions);
  }
  ledger.last = offer;
}

// Ascending opponent weight.
inline Agenda perfect_agenda(const UtilityProfile& opponent_profile) {
  std::vector<std::size_t> order(opponent_profile.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return opponent_profile.weight(a) <
                            opponent_profile.weight(b);
                   });
  return Agenda(std::move(order));
}

// Descending accumulated concession; attributes the opponent gives up most
// readily are the cheapest to fill first.
inline Agenda learned_agenda(const ConcessionLedger& ledger) {
  std::vector<std::size_t> order(ledger.totals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return ledger.totals[a] > ledger.totals[b];
                   });
  return Agenda(std::move(order));
}

template <class Rng>
Agenda random_agenda(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  return Agenda(std::move(order));
}

template <class Rng>
Agenda make_agenda(const AgendaPolicy& policy, const ConcessionLedger& ledger,
                   const UtilityProfile* opponent_profile, Rng& rng) {
  switch (policy.kind) {
    case AgendaPolicy::Kind::kPerfect:
      if (opponent_profile == nullptr) {
        throw StructuralError("perfect agenda needs the opponent profile");
      }
      return perfect_agenda(*opponent_profile);
    case AgendaPolicy::Kind::kSimpleLearning:
      return learned_agenda(ledger);
    case AgendaPolicy::Kind::kRandom:
      return random_agenda(ledger.totals.size(), rng);
  }
  return learned_agenda(ledger);
}

namespace internal {

inline void finish_record(NegotiationRecord& rec,
                          std::span<const TeamMember> team,
                          const UtilityProfile& opponent_profile) {
  rec.final_utilities.assign(team.size(), 0.0);
  rec.reservation_utilities.clear();
  rec.genuine.clear();
  for (const TeamMember& m : team) {
    rec.reservation_utilities.push_back(m.params.ru);
    rec.genuine.push_back(m.genuine());
  }
  if (rec.agreement) {
    for (std::size_t i = 0; i < team.size(); ++i) {
      rec.final_utilities[i] = utility(team[i].profile, *rec.agreed_offer);
    }
    rec.opponent_utility = utility(opponent_profile, *rec.agreed_offer);
  }
}

}  // namespace internal

// Runs the full mediated negotiation. The team moves first each round; the
// opponent either accepts or counters, and the team votes on the counter.
// The process fails once either deadline is passed.
template <class Rng>
NegotiationRecord run_negotiation(const Scenario& scenario,
                                  const MediatorConfig& config, Rng& rng) {
  scenario.validate();
  NegotiationRecord rec;
  const std::span<const TeamMember> team = scenario.team;
  const int team_deadline = scenario.team_deadline();
  const int last_round = std::min(team_deadline, scenario.opponent.params.deadline);
  if (last_round <= 0) {
    internal::finish_record(rec, team, scenario.opponent.profile);
    return rec;
  }

  const std::size_t n = scenario.attributes();
  const auto dirs = scenario.team_directions();
  const InterestMatrix interest = run_prenegotiation(team, n);
  const int window = config.agenda.effective_window(team_deadline);
  ConcessionLedger ledger(n);
  Agenda static_agenda;
  if (config.agenda.kind == AgendaPolicy::Kind::kPerfect) {
    static_agenda = perfect_agenda(scenario.opponent.profile);
  }

  for (int t = 0; t <= last_round; ++t) {
    RoundLog log;
    log.round = t;
    const Agenda agenda =
        config.agenda.kind == AgendaPolicy::Kind::kPerfect
            ? static_agenda
            : make_agenda(config.agenda, ledger, nullptr, rng);
    log.agenda.assign(agenda.begin(), agenda.end());
    log.team_offer = construct_offer(
        team, interest, agenda, t, rng,
        config.record_construction ? &log.steps : nullptr);
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

    const Offer& counter = *reply.counter;
    log.votes.reserve(team.size());
    for (const TeamMember& m : team) {
      log.votes.push_back(vote_on_offer(m, counter, t));
    }
    log.team_accepted = config.acceptance_enabled &&
                        acceptance_vote(log.votes, config.threshold);
    log.counter_offer = counter;
    if (log.team_accepted) {
      rec.agreement = true;
      rec.final_round = t;
      rec.agreed_offer = counter;
      rec.acceptor = Acceptor::kTeam;
      rec.rounds.push_back(std::move(log));
      break;
    }
    observe_opponent_offer(ledger, counter, dirs, window);
    rec.final_round = t;
    rec.rounds.push_back(std::move(log));
  }
  internal::finish_record(rec, team, scenario.opponent.profile);
  return rec;
}

}  // namespace fum

#endif  // FUM_MEDIATOR_HPP_
