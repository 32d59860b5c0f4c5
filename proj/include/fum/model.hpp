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

#ifndef FUM_MODEL_HPP_
#define FUM_MODEL_HPP_

// Domain types and linear additive utility arithmetic shared by every other
// part of the library. Attribute values live in [0,1]; each attribute carries
// a monotonic direction seen from the team's side, and the opponent always
// holds the opposite direction.

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fum {

// Absorbs floating-point drift in sums of weighted valuations.
inline constexpr double kUtilityTolerance = 1e-9;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Direction { kIncreasing, kDecreasing };

inline Direction opposite(Direction d) {
  return d == Direction::kIncreasing ? Direction::kDecreasing
                                     : Direction::kIncreasing;
}

inline std::vector<Direction> opposite(std::span<const Direction> dirs) {
  std::vector<Direction> out;
  out.reserve(dirs.size());
  for (Direction d : dirs) out.push_back(opposite(d));
  return out;
}

namespace internal {

inline void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(std::string(what) + " must lie in [0,1], got " +
                      std::to_string(v));
  }
}

}  // namespace internal

// Canonical linear valuation: identity for increasing attributes, reflection
// for decreasing ones.
inline double valuation(Direction direction, double x) {
  internal::check_unit(x, "attribute value");
  return direction == Direction::kIncreasing ? x : 1.0 - x;
}

inline double invert_valuation(Direction direction, double v) {
  internal::check_unit(v, "valuation");
  return direction == Direction::kIncreasing ? v : 1.0 - v;
}

// A complete offer: one value in [0,1] per attribute.
class Offer {
 public:
  Offer() = default;
  explicit Offer(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) internal::check_unit(v, "offer component");
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const Offer&, const Offer&) = default;

 private:
  std::vector<double> values_;
};

// An offer under construction. Unset attributes are absent.
class PartialOffer {
 public:
  explicit PartialOffer(std::size_t attributes) : attributes_(attributes) {}

  std::size_t attributes() const { return attributes_; }
  bool is_assigned(std::size_t j) const { return values_.contains(j); }
  std::size_t assigned_count() const { return values_.size(); }
  bool complete() const { return values_.size() == attributes_; }
  const std::map<std::size_t, double>& assignments() const { return values_; }

  void assign(std::size_t j, double x) {
    if (j >= attributes_) {
      throw StructuralError("attribute index " + std::to_string(j) +
                            " out of range");
    }
    if (is_assigned(j)) {
      throw ProtocolError("attribute " + std::to_string(j) +
                          " assigned twice");
    }
    internal::check_unit(x, "attribute value");
    values_.emplace(j, x);
  }

  Offer to_offer() const {
    if (!complete()) throw ProtocolError("partial offer is not complete");
    std::vector<double> out(attributes_);
    for (const auto& [j, x] : values_) out[j] = x;
    return Offer(std::move(out));
  }

 private:
  std::size_t attributes_;
  std::map<std::size_t, double> values_;
};

// Normalized attribute weights plus per-attribute valuation direction.
class UtilityProfile {
 public:
  static constexpr double kWeightTolerance = 1e-9;

  UtilityProfile() = default;
  UtilityProfile(std::vector<double> weights, std::vector<Direction> directions)
      : weights_(std::move(weights)), directions_(std::move(directions)) {
    if (weights_.empty()) throw StructuralError("profile has no attributes");
    if (weights_.size() != directions_.size()) {
      throw StructuralError("weights and directions differ in length");
    }
    double sum = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0)) throw DomainError("negative attribute weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightTolerance) {
      throw DomainError("weights must sum to 1, got " + std::to_string(sum));
    }
  }

  // Every attribute shares one direction.
  static UtilityProfile uniform_direction(std::vector<double> weights,
                                          Direction d) {
    std::vector<Direction> dirs(weights.size(), d);
    return UtilityProfile(std::move(weights), std::move(dirs));
  }

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t j) const { return weights_[j]; }
  Direction direction(std::size_t j) const { return directions_[j]; }
  std::span<const double> weights() const { return weights_; }
  std::span<const Direction> directions() const { return directions_; }

 private:
  std::vector<double> weights_;
  std::vector<Direction> directions_;
};

inline double utility(const UtilityProfile& profile, const Offer& offer) {
  if (offer.size() != profile.size()) {
    throw StructuralError("offer has " + std::to_string(offer.size()) +
                          " attributes, profile has " +
                          std::to_string(profile.size()));
  }
  double u = 0.0;
  for (std::size_t j = 0; j < profile.size(); ++j) {
    u += profile.weight(j) * valuation(profile.direction(j), offer[j]);
  }
  return u;
}

// Unset attributes contribute nothing.
inline double partial_utility(const UtilityProfile& profile,
                              const PartialOffer& partial) {
  if (partial.attributes() != profile.size()) {
    throw StructuralError("partial offer and profile differ in length");
  }
  double u = 0.0;
  for (const auto& [j, x] : partial.assignments()) {
    u += profile.weight(j) * valuation(profile.direction(j), x);
  }
  return u;
}

// Time-dependent concession parameters of one negotiator.
struct NegotiatorParams {
  int deadline = 0;
  double beta = 1.0;
  double ru = 0.0;
  double epsilon = 0.0;

  void validate() const {
    if (deadline < 0) throw DomainError("deadline must be nonnegative");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    internal::check_unit(ru, "reservation utility");
    internal::check_unit(epsilon, "epsilon");
    if (ru + epsilon > 1.0 + kUtilityTolerance) {
      throw DomainError("ru + epsilon must not exceed 1");
    }
  }
};

inline NegotiatorParams make_params(int deadline, double beta, double ru,
                                    double epsilon = 0.0) {
  NegotiatorParams p{deadline, beta, ru, epsilon};
  p.validate();
  return p;
}

// Decision rights retained by each team member after pre-negotiation.
class InterestMatrix {
 public:
  InterestMatrix() = default;
  InterestMatrix(std::size_t members, std::size_t attributes)
      : members_(members),
        attributes_(attributes),
        retained_(members * attributes, true) {}

  std::size_t members() const { return members_; }
  std::size_t attributes() const { return attributes_; }
  bool retained(std::size_t i, std::size_t j) const {
    return retained_[i * attributes_ + j];
  }
  void relinquish(std::size_t i, std::size_t j) {
    retained_[i * attributes_ + j] = false;
  }

 private:
  std::size_t members_ = 0;
  std::size_t attributes_ = 0;
  std::vector<bool> retained_;
};

enum class Acceptor { kOpponent, kTeam };

// One attribute of the iterated construction, kept only when tracing.
struct ConstructionStep {
  std::size_t attribute = 0;
  std::vector<std::pair<std::size_t, double>> bids;  // (member, value)
  double value = 0.0;
  bool opponent_default = false;
  std::vector<std::size_t> left;  // members that left the active set
};

// One alternating-offers round as seen by the mediator.
struct RoundLog {
  int round = 0;
  std::vector<std::size_t> agenda;
  std::vector<ConstructionStep> steps;
  Offer team_offer;
  double opponent_utility_of_team_offer = 0.0;
  bool opponent_accepted = false;
  std::optional<Offer> counter_offer;
  std::vector<bool> votes;
  bool team_accepted = false;
};

struct NegotiationRecord {
  bool agreement = false;
  int final_round = 0;
  std::optional<Offer> agreed_offer;
  std::optional<Acceptor> acceptor;
  std::vector<RoundLog> rounds;
  // Zero for every member on failure.
  std::vector<double> final_utilities;
  std::vector<double> reservation_utilities;
  // Members whose utility counts toward team metrics (infiltrators excluded).
  std::vector<bool> genuine;
  double opponent_utility = 0.0;
};

}  // namespace fum

#endif  // FUM_MODEL_HPP_
