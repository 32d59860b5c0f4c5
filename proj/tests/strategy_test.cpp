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

#include <algorithm>
#include <random>
#include <vector>

#include "fum/strategy.hpp"
#include "oracles.hpp"

namespace fum {
namespace {

constexpr auto kInc = Direction::kIncreasing;
constexpr auto kDec = Direction::kDecreasing;

TEST(OpponentAspiration, Examples) {
  EXPECT_DOUBLE_EQ(opponent_aspiration(make_params(10, 1.0, 0.0), 0), 1.0);
  EXPECT_DOUBLE_EQ(opponent_aspiration(make_params(10, 1.0, 0.0), 10), 0.0);
  EXPECT_DOUBLE_EQ(opponent_aspiration(make_params(50, 0.5, 0.25), 25),
                   0.8125);
}

TEST(OpponentAspiration, ClampsPastDeadlineAndRejectsZeroDeadline) {
  const auto p = make_params(10, 0.7, 0.2);
  EXPECT_DOUBLE_EQ(opponent_aspiration(p, 11), 0.2);
  EXPECT_DOUBLE_EQ(opponent_aspiration(p, 40), 0.2);
  EXPECT_THROW(opponent_aspiration(make_params(0, 1.0, 0.0), 0), DomainError);
  EXPECT_THROW(opponent_aspiration(p, -1), DomainError);
}

TEST(TeamAspiration, Examples) {
  EXPECT_DOUBLE_EQ(team_aspiration(make_params(10, 1.0, 0.0, 0.0), 5), 0.5);
  EXPECT_DOUBLE_EQ(team_aspiration(make_params(10, 1.0, 0.0, 0.2), 0), 0.8);
  EXPECT_NEAR(team_aspiration(make_params(50, 1.0, 0.1, 0.2), 25), 0.45,
              1e-12);
  EXPECT_THROW(team_aspiration(make_params(0, 1.0, 0.0), 0), DomainError);
}

TEST(Accepts, Examples) {
  EXPECT_TRUE(accepts(0.4, 0.5));
  EXPECT_TRUE(accepts(0.5, 0.5));
  EXPECT_FALSE(accepts(0.9, 0.0));
  EXPECT_TRUE(accepts(0.5, 0.5 - 1e-10));
  EXPECT_FALSE(accepts(0.5, 0.5 - 1e-8));
}

TEST(AspirationProperty, MonotoneBoundedAndShapedByBeta) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const int T = 1 + k % 60;
    const double eps = 0.5 * u(rng);
    const double ru = (1.0 - eps) * u(rng);
    const double beta = 0.1 + 3.0 * u(rng);
    const auto p = make_params(T, beta, ru, eps);
    const auto linear = make_params(T, 1.0, ru, eps);
    double prev_op = 2.0;
    double prev_team = 2.0;
    for (int t = 0; t <= T + 2; ++t) {
      const double op = opponent_aspiration(p, t);
      const double team = team_aspiration(p, t);
      EXPECT_LE(op, prev_op + 1e-15);
      EXPECT_LE(team, prev_team + 1e-15);
      EXPECT_GE(op, ru - 1e-15);
      EXPECT_LE(op, 1.0);
      EXPECT_GE(team, ru - 1e-15);
      EXPECT_LE(team, 1.0 - eps + 1e-15);
      prev_op = op;
      prev_team = team;
      if (t > 0 && t < T && ru + eps < 1.0 - 1e-9) {
        if (beta < 1.0) {
          EXPECT_GT(team, team_aspiration(linear, t));
          EXPECT_GT(op, opponent_aspiration(linear, t));
        } else if (beta > 1.0) {
          EXPECT_LT(team, team_aspiration(linear, t));
          EXPECT_LT(op, opponent_aspiration(linear, t));
        }
      }
    }
  }
}

TEST(Handover, Examples) {
  const UtilityProfile p({0.5, 0.3, 0.2, 0.0}, std::vector<Direction>(4, kInc));
  EXPECT_EQ(select_handover_set(p, 0.0), (std::vector<std::size_t>{3}));
  EXPECT_EQ(select_handover_set(p, 0.2), (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(select_handover_set(p, 0.25), (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(select_handover_set(p, 1.0).size(), 4u);
}

TEST(Handover, TiesBreakByIndex) {
  const UtilityProfile p({0.25, 0.25, 0.25, 0.25},
                         std::vector<Direction>(4, kInc));
  EXPECT_EQ(select_handover_set(p, 0.3), (std::vector<std::size_t>{0}));
  EXPECT_EQ(select_handover_set(p, 0.5), (std::vector<std::size_t>{0, 1}));
}

TEST(Handover, MatchesExhaustiveSubsetSearch) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 3000; ++k) {
    const std::size_t n = 1 + k % 10;
    const UtilityProfile p = oracle::random_profile(n, rng);
    const double eps = u(rng) < 0.2 ? 0.0 : 0.6 * u(rng);
    const auto chosen = select_handover_set(p, eps);
    double total = 0.0;
    for (std::size_t j : chosen) total += p.weight(j);
    EXPECT_LE(total, eps + 1e-12);
    EXPECT_EQ(chosen.size(), oracle::max_handover_size(p, eps));
  }
}

UtilityProfile two_attribute(Direction d) {
  return UtilityProfile({0.5, 0.5}, {d, d});
}

TEST(BidValue, Examples) {
  PartialOffer empty(2);
  EXPECT_NEAR(bid_value(two_attribute(kInc), 0, empty, 0.3), 0.6, 1e-12);
  EXPECT_DOUBLE_EQ(bid_value(two_attribute(kInc), 0, empty, 0.7), 1.0);
  EXPECT_NEAR(bid_value(two_attribute(kDec), 0, empty, 0.25), 0.5, 1e-12);
}

TEST(BidValue, SatisfiedOrWeightlessAsksNothing) {
  PartialOffer high(2);
  high.assign(1, 1.0);
  EXPECT_DOUBLE_EQ(bid_value(two_attribute(kInc), 0, high, 0.4), 0.0);
  PartialOffer low(2);
  low.assign(1, 0.0);
  EXPECT_DOUBLE_EQ(bid_value(two_attribute(kDec), 0, low, 0.4), 1.0);
  const UtilityProfile zero({1.0, 0.0}, {kInc, kInc});
  EXPECT_DOUBLE_EQ(bid_value(zero, 1, PartialOffer(2), 0.9), 0.0);
}

TEST(BidValue, AssignedAttributeIsProtocolError) {
  PartialOffer partial(2);
  partial.assign(0, 0.3);
  EXPECT_THROW(bid_value(two_attribute(kInc), 0, partial, 0.5), ProtocolError);
}

// Random bid instance with n <= 4 and a partial assignment of the others.
struct BidCase {
  UtilityProfile profile;
  PartialOffer partial{1};
  std::size_t j = 0;
  double aspiration = 0.0;
};

BidCase random_bid_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  BidCase c;
  const std::size_t n = size(rng);
  c.profile = oracle::random_profile(n, rng);
  c.partial = PartialOffer(n);
  c.j = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  for (std::size_t k = 0; k < n; ++k) {
    if (k != c.j && u(rng) < 0.5) c.partial.assign(k, u(rng));
  }
  c.aspiration = u(rng);
  return c;
}

TEST(BidValue, MatchesGridOracle) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 2000; ++k) {
    const BidCase c = random_bid_case(rng);
    const double x = bid_value(c.profile, c.j, c.partial, c.aspiration);
    const double v = valuation(c.profile.direction(c.j), x);
    EXPECT_NEAR(v, oracle::bid_valuation(c.profile, c.j, c.partial,
                                         c.aspiration),
                2e-3);
  }
}

TEST(BidValue, NeverOvershootsUnlessCapped) {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 5000; ++k) {
    const BidCase c = random_bid_case(rng);
    const double have = partial_utility(c.profile, c.partial);
    const double x = bid_value(c.profile, c.j, c.partial, c.aspiration);
    const double v = valuation(c.profile.direction(c.j), x);
    if (v < 1.0) {
      EXPECT_LE(have + c.profile.weight(c.j) * v,
                std::max(have, c.aspiration) + 1e-12);
    }
  }
}

TEST(DeviatedBid, Examples) {
  const UtilityProfile one({1.0}, {kInc});
  EXPECT_NEAR(deviated_bid(one, 0, PartialOffer(1), 0.5,
                           {DeviationMode::kSlightlyDeviated, 1.25}),
              0.625, 1e-12);
  EXPECT_DOUBLE_EQ(deviated_bid(two_attribute(kInc), 0, PartialOffer(2), 0.5,
                                {DeviationMode::kHighlyDeviated, 1.75}),
                   1.0);
  EXPECT_THROW(deviated_bid(one, 0, PartialOffer(1), 0.5,
                            {DeviationMode::kSlightlyDeviated, 0.9}),
               DomainError);
}

TEST(DeviatedBid, UnitFactorIsBidAndLargerFactorsAskMore) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(1.0, 3.0);
  for (int k = 0; k < 2000; ++k) {
    const BidCase c = random_bid_case(rng);
    const double plain = bid_value(c.profile, c.j, c.partial, c.aspiration);
    EXPECT_EQ(deviated_bid(c.profile, c.j, c.partial, c.aspiration,
                           {DeviationMode::kStandard, 1.0}),
              plain);
    const double dev = deviated_bid(c.profile, c.j, c.partial, c.aspiration,
                                    {DeviationMode::kSlightlyDeviated, u(rng)});
    const Direction d = c.profile.direction(c.j);
    EXPECT_GE(valuation(d, dev), valuation(d, plain) - 1e-12);
  }
}

TEST(ExtraDemand, Examples) {
  EXPECT_DOUBLE_EQ(extra_demand_for_draw(kInc, 0.10), 0.10);
  EXPECT_DOUBLE_EQ(extra_demand_for_draw(kInc, 0.50), 0.50);
  EXPECT_DOUBLE_EQ(extra_demand_for_draw(kDec, 0.30), 0.70);
}

TEST(ExtraDemand, DrawsValuationInRange) {
  std::mt19937_64 rng(26);
  const UtilityProfile p({0.5, 0.5}, {kInc, kDec});
  for (int k = 0; k < 5000; ++k) {
    const std::size_t j = k % 2;
    const double v = valuation(p.direction(j), extra_demand(p, j, rng));
    EXPECT_GE(v, 0.10);
    EXPECT_LE(v, 0.50);
  }
}

TEST(IsoUtility, Examples) {
  std::mt19937_64 rng(27);
  const UtilityProfile p({0.2, 0.3, 0.5}, {kInc, kInc, kInc});
  EXPECT_EQ(iso_utility_offer(p, 1.0, OfferMode::kRandom, rng),
            Offer({1.0, 1.0, 1.0}));
  EXPECT_EQ(iso_utility_offer(p, 0.5, OfferMode::kUniform, rng),
            Offer({0.5, 0.5, 0.5}));
  const UtilityProfile mixed({0.2, 0.3, 0.5}, {kInc, kDec, kInc});
  EXPECT_EQ(iso_utility_offer(mixed, 0.5, OfferMode::kUniform, rng),
            Offer({0.5, 0.5, 0.5}));
  EXPECT_EQ(iso_utility_offer(mixed, 1.0, OfferMode::kUniform, rng),
            Offer({1.0, 0.0, 1.0}));
}

TEST(IsoUtility, RandomModeHitsTarget) {
  std::mt19937_64 rng(28);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 5000; ++k) {
    const UtilityProfile p = oracle::random_profile(1 + k % 8, rng);
    const double target = k == 0 ? 0.37 : u(rng);
    for (OfferMode mode : {OfferMode::kRandom, OfferMode::kUniform}) {
      EXPECT_NEAR(utility(p, iso_utility_offer(p, target, mode, rng)), target,
                  1e-9);
    }
  }
}

TEST(NearestIso, HitsTargetAndMatchesGridOracle) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 3;
    const UtilityProfile p = oracle::random_profile(n, rng);
    const double target = u(rng);
    std::vector<double> ref(n);
    for (double& x : ref) x = u(rng);
    const Offer reference(ref);
    const Offer ours = nearest_iso_utility_offer(p, target, reference);
    EXPECT_NEAR(utility(p, ours), target, 1e-9);
    const double d = oracle::distance(ours, reference);
    const double grid = oracle::nearest_iso_distance(p, target, reference);
    EXPECT_LE(d, grid + 1e-6);
    EXPECT_NEAR(d, grid, 2e-3);
  }
}

TEST(NearestIso, ReferenceOnTheSetIsFixed) {
  const UtilityProfile p({0.4, 0.6}, {kInc, kDec});
  const Offer x({0.5, 0.5});
  const Offer y = nearest_iso_utility_offer(p, utility(p, x), x);
  EXPECT_NEAR(y[0], 0.5, 1e-9);
  EXPECT_NEAR(y[1], 0.5, 1e-9);
}

TEST(TeamExtreme, Ends) {
  EXPECT_DOUBLE_EQ(team_extreme_value(kInc), 1.0);
  EXPECT_DOUBLE_EQ(team_extreme_value(kDec), 0.0);
}

}  // namespace
}  // namespace fum
