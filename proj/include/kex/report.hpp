// Copyright 2026 The kexlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KEX_REPORT_HPP_
#define KEX_REPORT_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace kex {

/// Mean and replica-level standard error; statistics are always computed
/// across independent replicas, never along a single autocorrelated path.
struct ReplicaStats {
  std::vector<double> values;

  int count() const { return static_cast<int>(values.size()); }
  double mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return values.empty() ? 0.0 : s / static_cast<double>(values.size());
  }
  double stderror() const {
    if (values.size() < 2) return 0.0;
    double m = mean(), s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    double var = s / static_cast<double>(values.size() - 1);
    return std::sqrt(var / static_cast<double>(values.size()));
  }
};

struct CheckLine {
  std::string label;
  bool pass;
  std::string detail;
};

struct EstimateReport {
  std::string name;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  int replicas = 0;
  bool truncated = false;  // deadline hit; partial results
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, ReplicaStats>> estimates;
  std::vector<CheckLine> checks;
  std::vector<std::string> notes;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string to_json() const;
};

}  // namespace kex

#endif  // KEX_REPORT_HPP_
