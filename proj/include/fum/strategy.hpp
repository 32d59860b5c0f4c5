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

#ifndef FUM_STRATEGY_HPP_
#define FUM_STRATEGY_HPP_

// Per-agent decision formulas: concession curves, acceptance, handover of
// decision rights, the attribute bid solver and iso-utility offer generation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "fum/model.hpp"

namespace fum {

enum class DeviationMode { kStandard, kSlightlyDeviated, kHighlyDeviated };

struct DeviationParams {
  static constexpr double kExtraValuationMin = 0.10;
  static constexpr double kExtraValuationMax = 0.50;

  DeviationMode mode = DeviationMode::kStandard;
  // Demand multiplier; 1 for standard members.
  double d = 1.0;
};

enum class OfferMode { kUniform, kRandom };

namespace internal {

inline double concession_fraction(const NegotiatorParams& params, int t) {
  if (params.deadline <= 0) {
    throw DomainError("aspiration undefined for a zero deadline");
  }
  if (t < 0) throw DomainError("round must be nonnegative");
  const int clamped = std::min(t, params.deadline);
  const double ratio = static_cast<double>(clamped) / params.deadline;
  return std::pow(ratio, 1.0 / params.beta);
}

}  // namespace internal

// Time-dependent tactic: starts at 1 and reaches RU at the deadline. Rounds
// past the deadline are clamped to it.
inline double opponent_aspiration(const NegotiatorParams& params, int t) {
  return 1.0 - (1.0 - params.ru) * internal::concession_fraction(params, t);
}

// Team member curve; capped at 1 - epsilon because the member cannot demand
// utility from attributes whose decision rights it handed over.
inline double team_aspiration(const NegotiatorParams& params, int t) {
  const double top = 1.0 - params.epsilon;
  return top - (top - params.ru) * internal::concession_fraction(params, t);
}

inline bool accepts(double aspiration_next, double utility_of_offer) {
  return utility_of_offer >= aspiration_next - kUtilityTolerance;
}

// Largest set of attributes whose total weight stays within epsilon. Greedy
// by ascending weight (ties by index) is optimal for cardinality. Returned in
// the order chosen.
inline std::vector<std::size_t> select_handover_set(
    const UtilityProfile& profile, double epsilon) {
  std::vector<std::size_t> order(profile.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return profile.weight(a) < profile.weight(b);
                   });
  std::vector<std::size_t> chosen;
  double total = 0.0;
  for (std::size_t j : order) {
    if (total + profile.weight(j) > epsilon + 1e-12) break;
    total += profile.weight(j);
    chosen.push_back(j);
  }
  return chosen;
}

namespace internal {

inline double demand_for(const UtilityProfile& profile, std::size_t j,
                         const PartialOffer& partial, double needed) {
  if (partial.is_assigned(j)) {
    throw ProtocolError("bid requested for an attribute already set");
  }
  const double w = profile.weight(j);
  if (w <= 0.0 || needed <= 0.0) {
    return invert_valuation(profile.direction(j), 0.0);
  }
  const double v = std::min(1.0, needed / w);
  return invert_valuation(profile.direction(j), v);
}

}  // namespace internal

// Value for attribute j that brings the member as close as possible to its
// aspiration without overshooting it, unless capped at full valuation.
inline double bid_value(const UtilityProfile& profile, std::size_t j,
                        const PartialOffer& partial, double aspiration) {
  const double needed =
      std::max(0.0, aspiration - partial_utility(profile, partial));
  return internal::demand_for(profile, j, partial, needed);
}

// Like bid_value but asks for d times the missing utility.
inline double deviated_bid(const UtilityProfile& profile, std::size_t j,
                           const PartialOffer& partial, double aspiration,
                           const DeviationParams& dev) {
  if (dev.d < 1.0) throw DomainError("deviation factor must be >= 1");
  const double needed =
      dev.d * std::max(0.0, aspiration - partial_utility(profile, partial));
  return internal::demand_for(profile, j, partial, needed);
}

inline double extra_demand_for_draw(Direction direction, double v) {
  return invert_valuation(direction, v);
}

// Extra demand placed by a highly deviated member that is already satisfied.
template <class Rng>
double extra_demand(const UtilityProfile& profile, std::size_t j, Rng& rng) {
  std::uniform_real_distribution<double> draw(
      DeviationParams::kExtraValuationMin, DeviationParams::kExtraValuationMax);
  return extra_demand_for_draw(profile.direction(j), draw(rng));
}

namespace internal {

inline Offer offer_from_valuations(const UtilityProfile& profile,
                                   std::vector<double> v) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = invert_valuation(profile.direction(j), std::clamp(v[j], 0.0, 1.0));
  }
  return Offer(std::move(v));
}

// Rescales the weighted entries of v so that sum(w * v) == target, clamping
// at 1 and spreading the remainder over the entries still below 1.
inline void rescale_to_target(const UtilityProfile& profile,
                              std::vector<double>& v, double target) {
  const std::size_t n = profile.size();
  std::vector<bool> pinned(n, false);
  for (std::size_t pass = 0; pass <= n; ++pass) {
    double fixed = 0.0;
    double current = 0.0;
    double free_weight = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = profile.weight(j);
      if (w <= 0.0) continue;
      if (pinned[j]) {
        fixed += w;
      } else {
        current += w * v[j];
        free_weight += w;
      }
    }
    if (free_weight <= 0.0) return;
    const double need = std::max(0.0, target - fixed);
    if (current <= 0.0) {
      for (std::size_t j = 0; j < n; ++j) {
        if (profile.weight(j) > 0.0 && !pinned[j]) v[j] = need / free_weight;
      }
      return;
    }
    const double scale = need / current;
    bool clamped = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (profile.weight(j) <= 0.0 || pinned[j]) continue;
      v[j] *= scale;
      if (v[j] >= 1.0) {
        v[j] = 1.0;
        pinned[j] = true;
        clamped = true;
      }
    }
    if (!clamped) return;
  }
}

}  // namespace internal

// An offer whose utility for `profile` equals `target`.
template <class Rng>
Offer iso_utility_offer(const UtilityProfile& profile, double target,
                        OfferMode mode, Rng& rng) {
  internal::check_unit(target, "target utility");
  const std::size_t n = profile.size();
  if (target >= 1.0) {
    return internal::offer_from_valuations(profile,
                                           std::vector<double>(n, 1.0));
  }
  if (mode == OfferMode::kUniform) {
    return internal::offer_from_valuations(profile,
                                           std::vector<double>(n, target));
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = unit(rng);
  internal::rescale_to_target(profile, v, target);
  return internal::offer_from_valuations(profile, std::move(v));
}

// Point on the iso-utility set {X : U(X) = target} closest in Euclidean
// distance to `reference`. Linear valuations have unit slope, so the distance
// is the same in valuation space, where the problem is a projection onto a
// weighted hyperplane intersected with the unit box:
//   v_j = clamp(q_j + lambda * w_j, 0, 1), with lambda solving U = target.
inline Offer nearest_iso_utility_offer(const UtilityProfile& profile,
                                       double target, const Offer& reference) {
  internal::check_unit(target, "target utility");
  const std::size_t n = profile.size();
  if (reference.size() != n) {
    throw StructuralError("reference offer length mismatch");
  }
  std::vector<double> q(n);
  double min_weight = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    q[j] = valuation(profile.direction(j), reference[j]);
    if (profile.weight(j) > 0.0) {
      min_weight = std::min(min_weight, profile.weight(j));
    }
  }
  auto project = [&](double lambda) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
      v[j] = std::clamp(q[j] + lambda * profile.weight(j), 0.0, 1.0);
    }
    return v;
  };
  auto weighted = [&](const std::vector<double>& v) {
    double u = 0.0;
    for (std::size_t j = 0; j < n; ++j) u += profile.weight(j) * v[j];
    return u;
  };
  double lo = -(1.0 / min_weight + 1.0);
  double hi = -lo;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (weighted(project(mid)) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return internal::offer_from_valuations(profile, project(hi));
}

// The value of attribute j the team likes most.
inline double team_extreme_value(Direction team_direction) {
  return invert_valuation(team_direction, 1.0);
}

}  // namespace fum

#endif  // FUM_STRATEGY_HPP_
