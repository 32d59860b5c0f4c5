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

#ifndef FUM_HARNESS_CSV_HPP_
#define FUM_HARNESS_CSV_HPP_

// CSV emission. Headers are fixed:
//
//   exp1_curves.csv   model,deadline,round,mean_u_op
//   exp1_metrics.csv  model,deadline,<metrics>
//   exp2_metrics.csv  model,deadline,epsilon,<metrics>
//   exp3_metrics.csv  model,deadline,probability,<metrics>
//   exp4_metrics.csv  model,deadline,behavior,deviated,d,<metrics>
//
// where <metrics> is
//   samples,mean_min,min_ci95,mean_ave,ave_ci95,failures,failure_rate,
//   unanimity_violations
//
// Reals are printed with a fixed number of decimals so that identical runs
// give byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fum/harness/experiments.hpp"

namespace fum::harness {

inline std::string fixed(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline constexpr const char* kMetricsColumns =
    "samples,mean_min,min_ci95,mean_ave,ave_ci95,failures,failure_rate,"
    "unanimity_violations";

inline std::string metrics_fields(const CellRow& row) {
  const MetricsRow& m = row.metrics;
  return std::to_string(m.samples) + "," + fixed(m.mean_min) + "," +
         fixed(m.min_ci) + "," + fixed(m.mean_ave) + "," + fixed(m.ave_ci) +
         "," + std::to_string(m.failures) + "," + fixed(m.failure_rate) + "," +
         std::to_string(row.unanimity_violations);
}

inline void write_metrics_csv(const ExperimentResult& result,
                              std::ostream& out) {
  out << "model,deadline,";
  switch (result.id) {
    case 2: out << "epsilon,"; break;
    case 3: out << "probability,"; break;
    case 4: out << "behavior,deviated,d,"; break;
    default: break;
  }
  out << kMetricsColumns << "\n";
  for (const CellRow& row : result.rows) {
    out << row.model << "," << to_string(row.regime) << ",";
    switch (result.id) {
      case 2:
      case 3: out << fixed(row.parameter, 2) << ","; break;
      case 4:
        out << row.behavior << "," << row.count << ","
            << fixed(row.parameter, 2) << ",";
        break;
      default: break;
    }
    out << metrics_fields(row) << "\n";
  }
}

inline void write_curves_csv(const ExperimentResult& result,
                             std::ostream& out) {
  out << "model,deadline,round,mean_u_op\n";
  for (const CurveRow& c : result.curves) {
    out << c.model << "," << to_string(c.regime) << "," << c.round << ","
        << fixed(c.mean_u_op) << "\n";
  }
}

// Writes expN_metrics.csv (and exp1_curves.csv) into `dir`, creating it if
// needed. Returns the written paths.
inline std::vector<std::filesystem::path> write_experiment_csv(
    const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::string& name) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
    return out;
  };
  {
    auto out = open("exp" + std::to_string(result.id) + "_metrics.csv");
    write_metrics_csv(result, out);
    if (!out) throw std::runtime_error("write failed in " + dir.string());
  }
  if (result.id == 1) {
    auto out = open("exp1_curves.csv");
    write_curves_csv(result, out);
    if (!out) throw std::runtime_error("write failed in " + dir.string());
  }
  return written;
}

}  // namespace fum::harness

#endif  // FUM_HARNESS_CSV_HPP_
