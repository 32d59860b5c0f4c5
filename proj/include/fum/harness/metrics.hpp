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

#ifndef FUM_HARNESS_METRICS_HPP_
#define FUM_HARNESS_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "fum/model.hpp"

namespace fum::harness {

// Team quality of one negotiation. Failures score zero.
struct Sample {
  bool agreement = false;
  double min_utility = 0.0;
  double average_utility = 0.0;
};

// Minimum and mean utility over genuine members; infiltrators do not count.
inline Sample summarize(const NegotiationRecord& rec) {
  Sample s;
  s.agreement = rec.agreement;
  if (!rec.agreement) return s;
  double lowest = 1.0;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < rec.final_utilities.size(); ++i) {
    if (!rec.genuine.empty() && !rec.genuine[i]) continue;
    lowest = std::min(lowest, rec.final_utilities[i]);
    sum += rec.final_utilities[i];
    ++count;
  }
  if (count == 0) return s;
  s.min_utility = lowest;
  s.average_utility = sum / static_cast<double>(count);
  return s;
}

struct MetricsRow {
  std::size_t samples = 0;
  double mean_min = 0.0;
  double min_ci = 0.0;  // 95% half-width
  double mean_ave = 0.0;
  double ave_ci = 0.0;
  std::size_t failures = 0;
  double failure_rate = 0.0;
};

inline constexpr double kZ95 = 1.96;

class RunningMean {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double half_width() const {
    if (n_ < 2) return 0.0;
    const double sd = std::sqrt(m2_ / static_cast<double>(n_ - 1));
    return kZ95 * sd / std::sqrt(static_cast<double>(n_));
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

class MetricsAccumulator {
 public:
  void add(const Sample& s) {
    min_.add(s.min_utility);
    ave_.add(s.average_utility);
    if (!s.agreement) ++failures_;
  }

  MetricsRow row() const {
    MetricsRow r;
    r.samples = min_.count();
    r.mean_min = min_.mean();
    r.min_ci = min_.half_width();
    r.mean_ave = ave_.mean();
    r.ave_ci = ave_.half_width();
    r.failures = failures_;
    r.failure_rate = r.samples == 0 ? 0.0
                                    : static_cast<double>(failures_) /
                                          static_cast<double>(r.samples);
    return r;
  }

 private:
  RunningMean min_;
  RunningMean ave_;
  std::size_t failures_ = 0;
};

}  // namespace fum::harness

#endif  // FUM_HARNESS_METRICS_HPP_
