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

#ifndef FUM_TRACE_HPP_
#define FUM_TRACE_HPP_

// Round-by-round protocol trace. Each event is one line `[t=<round>] <event>
// <detail>`; the same events are available as structured rows. Members and
// attributes are numbered from 1.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "fum/mediator.hpp"
#include "fum/model.hpp"

namespace fum {

struct TraceEvent {
  int round = 0;
  std::string event;
  std::string detail;
};

namespace internal {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string offer_text(const Offer& offer) {
  std::string s = "(";
  for (std::size_t j = 0; j < offer.size(); ++j) {
    if (j) s += ",";
    s += num(offer[j]);
  }
  return s + ")";
}

}  // namespace internal

inline std::vector<TraceEvent> trace_events(const Scenario& scenario,
                                            const NegotiationRecord& rec) {
  using internal::num;
  using internal::offer_text;
  std::vector<TraceEvent> out;
  const InterestMatrix interest =
      run_prenegotiation(scenario.team, scenario.attributes());
  for (std::size_t i = 0; i < interest.members(); ++i) {
    std::string handed;
    for (std::size_t j = 0; j < interest.attributes(); ++j) {
      if (interest.retained(i, j)) continue;
      if (!handed.empty()) handed += ",";
      handed += std::to_string(j + 1);
    }
    out.push_back({0, "prenegotiation",
                   "member=" + std::to_string(i + 1) + " relinquishes={" +
                       handed + "}"});
  }
  for (const RoundLog& log : rec.rounds) {
    const int t = log.round;
    if (!log.agenda.empty()) {
      std::string order;
      for (std::size_t j : log.agenda) {
        if (!order.empty()) order += ",";
        order += std::to_string(j + 1);
      }
      out.push_back({t, "agenda", order});
    }
    for (const ConstructionStep& step : log.steps) {
      const std::string attr = "attribute=" + std::to_string(step.attribute + 1);
      for (const auto& [member, value] : step.bids) {
        out.push_back({t, "bid",
                       attr + " member=" + std::to_string(member + 1) +
                           " value=" + num(value)});
      }
      out.push_back({t, "set",
                     attr + " value=" + num(step.value) +
                         (step.opponent_default ? " opponent-default" : "")});
      for (std::size_t member : step.left) {
        out.push_back({t, "satisfied", "member=" + std::to_string(member + 1)});
      }
    }
    out.push_back({t, "team-offer",
                   offer_text(log.team_offer) +
                       " u_op=" + num(log.opponent_utility_of_team_offer)});
    if (log.opponent_accepted) {
      out.push_back({t, "opponent-accepts", offer_text(log.team_offer)});
      continue;
    }
    if (log.counter_offer) {
      out.push_back({t, "opponent-counter", offer_text(*log.counter_offer)});
    }
    std::size_t yes = 0;
    std::string ballot;
    for (bool v : log.votes) {
      yes += v ? 1 : 0;
      ballot += v ? 'Y' : 'N';
    }
    out.push_back({t, "votes",
                   ballot + " " + std::to_string(yes) + "/" +
                       std::to_string(log.votes.size()) +
                       (log.team_accepted ? " accept" : " reject")});
  }
  if (rec.agreement) {
    out.push_back({rec.final_round, "agreement",
                   offer_text(*rec.agreed_offer) + " by=" +
                       (rec.acceptor == Acceptor::kOpponent ? "opponent"
                                                            : "team")});
  } else {
    out.push_back({rec.final_round, "failure", "deadline reached"});
  }
  return out;
}

inline void write_trace_text(const std::vector<TraceEvent>& events,
                             std::ostream& out) {
  for (const TraceEvent& e : events) {
    out << "[t=" << e.round << "] " << e.event;
    if (!e.detail.empty()) out << " " << e.detail;
    out << "\n";
  }
}

inline void write_trace_csv(const std::vector<TraceEvent>& events,
                            std::ostream& out) {
  out << "round,event,detail\n";
  for (const TraceEvent& e : events) {
    out << e.round << "," << e.event << ",\"" << e.detail << "\"\n";
  }
}

}  // namespace fum

#endif  // FUM_TRACE_HPP_
