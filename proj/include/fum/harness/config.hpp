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

#ifndef FUM_HARNESS_CONFIG_HPP_
#define FUM_HARNESS_CONFIG_HPP_

// Experiment configuration and its `key = value` text format.
//
// One key per line; `#` starts a comment; list values are comma separated.
// Recognized keys:
//
//   team_size, attributes                   team size M and attribute count n
//   deadline_min, deadline_max              deadline law used by `trace`
//   shared_deadline                         true: opponent reuses T_A
//   short_deadline_min, short_deadline_max  short regime of the experiments
//   long_deadline_min, long_deadline_max    long regime of the experiments
//   beta_min, beta_max                      concession speed law (both sides)
//   ru_min, ru_max                          reservation utility law
//   epsilon                                 handover budget of every member
//   infiltration_probability                P of one infiltrated competitor
//   infiltrator_ru_min, infiltrator_ru_max  infiltrator reservation law
//   slightly_deviated, highly_deviated      deviated member counts
//   deviation_factor                        demand multiplier d
//   teams, opponents, repetitions           sample counts
//   opponent_mode                           random | uniform
//   agenda                                  perfect | simple | random
//   learning_window                         0 selects floor(T_A / 4)
//   vote_threshold                          fraction in (0,1]
//   model                                   fum | re | ssv   (trace only)
//   re_offers                               similarity | random
//   epsilons                                experiment 2 sweep
//   infiltration_probabilities              experiment 3 sweep
//   deviation_factors, deviated_counts      experiment 4 sweep
//   workers                                 worker threads, 0 = all cores

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fum/baselines.hpp"
#include "fum/mediator.hpp"
#include "fum/strategy.hpp"

namespace fum::harness {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error("config key '" + key + "': " + message),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct DeadlineLaw {
  int min = 5;
  int max = 10;
};

enum class TeamModel { kFum, kRepresentative, kSimilarityVoting };

struct ScenarioDistribution {
  int team_size = 4;
  int attributes = 4;
  DeadlineLaw deadline{5, 10};
  // The opponent reuses the team's deadline draw instead of its own.
  bool shared_deadline = false;
  double beta_min = 0.4;
  double beta_max = 0.99;
  double ru_min = 0.0;
  double ru_max = 0.25;
  double epsilon = 0.0;
  double infiltration_probability = 0.0;
  double infiltrator_ru_min = 0.8;
  double infiltrator_ru_max = 1.0;
  int slightly_deviated = 0;
  int highly_deviated = 0;
  double deviation_factor = 1.0;
  int teams = 100;
  int opponents = 12;
  int repetitions = 4;
  OfferMode opponent_mode = OfferMode::kRandom;

  int negotiations() const { return teams * opponents * repetitions; }
};

struct ExperimentConfig {
  ScenarioDistribution base;
  DeadlineLaw short_deadline{5, 10};
  DeadlineLaw long_deadline{30, 60};
  AgendaPolicy agenda = AgendaPolicy::simple_learning();
  double vote_threshold = 1.0;
  TeamModel model = TeamModel::kFum;
  ReOffers re_offers = ReOffers::kSimilarity;
  std::vector<double> epsilons{0.0, 0.02, 0.05, 0.07, 0.10,
                               0.12, 0.15, 0.17, 0.20};
  std::vector<double> infiltration_probabilities{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> deviation_factors{1.25, 1.5, 1.75};
  std::vector<int> deviated_counts{1, 2, 3, 4};
  unsigned workers = 0;
};

// Standard setup of each experiment (1-4). Any
// other id yields the generic defaults.
inline ExperimentConfig default_config(int experiment) {
  ExperimentConfig c;
  if (experiment == 1) {
    c.base.opponents = 11;
    c.short_deadline = {10, 10};
    c.long_deadline = {50, 50};
    c.base.beta_min = c.base.beta_max = 1.0;
    c.base.ru_min = c.base.ru_max = 0.0;
  }
  return c;
}

namespace internal {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
}

inline long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
  return out;
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

inline double unit(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (!(d >= 0.0 && d <= 1.0)) throw ConfigError(key, "must lie in [0,1]");
  return d;
}

inline int positive(const std::string& key, const std::string& v) {
  const long long i = parse_int(key, v);
  if (i < 1) throw ConfigError(key, "must be at least 1");
  return static_cast<int>(i);
}

inline int nonnegative(const std::string& key, const std::string& v) {
  const long long i = parse_int(key, v);
  if (i < 0) throw ConfigError(key, "must be nonnegative");
  return static_cast<int>(i);
}

inline bool boolean(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

inline void set_key(ExperimentConfig& c, const std::string& key,
                    const std::string& v) {
  ScenarioDistribution& b = c.base;
  if (key == "team_size") {
    b.team_size = positive(key, v);
  } else if (key == "attributes") {
    b.attributes = positive(key, v);
  } else if (key == "deadline_min") {
    b.deadline.min = nonnegative(key, v);
  } else if (key == "deadline_max") {
    b.deadline.max = nonnegative(key, v);
  } else if (key == "shared_deadline") {
    b.shared_deadline = boolean(key, v);
  } else if (key == "short_deadline_min") {
    c.short_deadline.min = nonnegative(key, v);
  } else if (key == "short_deadline_max") {
    c.short_deadline.max = nonnegative(key, v);
  } else if (key == "long_deadline_min") {
    c.long_deadline.min = nonnegative(key, v);
  } else if (key == "long_deadline_max") {
    c.long_deadline.max = nonnegative(key, v);
  } else if (key == "beta_min") {
    b.beta_min = parse_double(key, v);
  } else if (key == "beta_max") {
    b.beta_max = parse_double(key, v);
  } else if (key == "ru_min") {
    b.ru_min = unit(key, v);
  } else if (key == "ru_max") {
    b.ru_max = unit(key, v);
  } else if (key == "epsilon") {
    b.epsilon = unit(key, v);
  } else if (key == "infiltration_probability") {
    b.infiltration_probability = unit(key, v);
  } else if (key == "infiltrator_ru_min") {
    b.infiltrator_ru_min = unit(key, v);
  } else if (key == "infiltrator_ru_max") {
    b.infiltrator_ru_max = unit(key, v);
  } else if (key == "slightly_deviated") {
    b.slightly_deviated = nonnegative(key, v);
  } else if (key == "highly_deviated") {
    b.highly_deviated = nonnegative(key, v);
  } else if (key == "deviation_factor") {
    b.deviation_factor = parse_double(key, v);
    if (b.deviation_factor < 1.0) throw ConfigError(key, "must be >= 1");
  } else if (key == "teams") {
    b.teams = positive(key, v);
  } else if (key == "opponents") {
    b.opponents = positive(key, v);
  } else if (key == "repetitions") {
    b.repetitions = positive(key, v);
  } else if (key == "opponent_mode") {
    if (v == "random") {
      b.opponent_mode = OfferMode::kRandom;
    } else if (v == "uniform") {
      b.opponent_mode = OfferMode::kUniform;
    } else {
      throw ConfigError(key, "expected random or uniform, got '" + v + "'");
    }
  } else if (key == "agenda") {
    const int window = c.agenda.window;
    if (v == "perfect") {
      c.agenda = AgendaPolicy::perfect();
    } else if (v == "simple") {
      c.agenda = AgendaPolicy::simple_learning();
    } else if (v == "random") {
      c.agenda = AgendaPolicy::random();
    } else {
      throw ConfigError(key, "expected perfect, simple or random");
    }
    c.agenda.window = window;
  } else if (key == "learning_window") {
    c.agenda.window = nonnegative(key, v);
  } else if (key == "vote_threshold") {
    c.vote_threshold = parse_double(key, v);
    if (!(c.vote_threshold > 0.0 && c.vote_threshold <= 1.0)) {
      throw ConfigError(key, "must lie in (0,1]");
    }
  } else if (key == "model") {
    if (v == "fum") {
      c.model = TeamModel::kFum;
    } else if (v == "re") {
      c.model = TeamModel::kRepresentative;
    } else if (v == "ssv") {
      c.model = TeamModel::kSimilarityVoting;
    } else {
      throw ConfigError(key, "expected fum, re or ssv");
    }
  } else if (key == "re_offers") {
    if (v == "similarity") {
      c.re_offers = ReOffers::kSimilarity;
    } else if (v == "random") {
      c.re_offers = ReOffers::kRandom;
    } else {
      throw ConfigError(key, "expected similarity or random");
    }
  } else if (key == "epsilons") {
    c.epsilons.clear();
    for (const auto& s : split_list(v)) c.epsilons.push_back(unit(key, s));
  } else if (key == "infiltration_probabilities") {
    c.infiltration_probabilities.clear();
    for (const auto& s : split_list(v)) {
      c.infiltration_probabilities.push_back(unit(key, s));
    }
  } else if (key == "deviation_factors") {
    c.deviation_factors.clear();
    for (const auto& s : split_list(v)) {
      const double d = parse_double(key, s);
      if (d < 1.0) throw ConfigError(key, "factors must be >= 1");
      c.deviation_factors.push_back(d);
    }
  } else if (key == "deviated_counts") {
    c.deviated_counts.clear();
    for (const auto& s : split_list(v)) {
      c.deviated_counts.push_back(positive(key, s));
    }
  } else if (key == "workers") {
    c.workers = static_cast<unsigned>(nonnegative(key, v));
  } else {
    throw ConfigError(key, "unknown key");
  }
}

inline void check_law(const std::string& key, const DeadlineLaw& law) {
  if (law.min > law.max) throw ConfigError(key, "min exceeds max");
}

}  // namespace internal

// Cross-key consistency; throws ConfigError naming the first bad key.
inline void validate(const ExperimentConfig& c) {
  const ScenarioDistribution& b = c.base;
  internal::check_law("deadline_min", b.deadline);
  internal::check_law("short_deadline_min", c.short_deadline);
  internal::check_law("long_deadline_min", c.long_deadline);
  if (!(b.beta_min > 0.0)) throw ConfigError("beta_min", "must be positive");
  if (b.beta_min > b.beta_max) throw ConfigError("beta_min", "exceeds beta_max");
  if (b.ru_min > b.ru_max) throw ConfigError("ru_min", "exceeds ru_max");
  if (b.infiltrator_ru_min > b.infiltrator_ru_max) {
    throw ConfigError("infiltrator_ru_min", "exceeds infiltrator_ru_max");
  }
  if (b.ru_max + b.epsilon > 1.0) {
    throw ConfigError("epsilon", "ru_max + epsilon must not exceed 1");
  }
  if (b.slightly_deviated + b.highly_deviated > b.team_size) {
    throw ConfigError("slightly_deviated", "more deviated members than team");
  }
  for (double eps : c.epsilons) {
    if (b.ru_max + eps > 1.0) {
      throw ConfigError("epsilons", "ru_max + epsilon must not exceed 1");
    }
  }
}

inline void apply_config_text(ExperimentConfig& c, std::string_view text) {
  std::stringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string content = internal::trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(content, "line " + std::to_string(lineno) +
                                     " is not of the form key = value");
    }
    const std::string key = internal::trim(content.substr(0, eq));
    const std::string value = internal::trim(content.substr(eq + 1));
    if (value.empty()) throw ConfigError(key, "missing value");
    internal::set_key(c, key, value);
  }
  validate(c);
}

inline ExperimentConfig load_config(const std::string& path, int experiment) {
  ExperimentConfig c = default_config(experiment);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(c, buf.str());
  return c;
}

}  // namespace fum::harness

#endif  // FUM_HARNESS_CONFIG_HPP_
