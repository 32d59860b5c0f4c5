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

#ifndef FUM_HARNESS_SEEDING_HPP_
#define FUM_HARNESS_SEEDING_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fum::harness {

using Stream = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Position-based seed: the same coordinates always give the same stream,
// whatever the scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> coords) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t c : coords) h = splitmix64(h ^ splitmix64(c + 1));
  return h;
}

inline Stream make_stream(std::uint64_t master,
                          std::initializer_list<std::uint64_t> coords) {
  return Stream(derive_seed(master, coords));
}

// Stream-domain tags.
inline constexpr std::uint64_t kTeamDomain = 1;
inline constexpr std::uint64_t kOpponentDomain = 2;
inline constexpr std::uint64_t kNegotiationDomain = 3;

}  // namespace fum::harness

#endif  // FUM_HARNESS_SEEDING_HPP_
