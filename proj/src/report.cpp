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

#include "kex/report.hpp"

#include <json.hpp>

#include "kex/csv.hpp"

namespace kex {

std::string EstimateReport::to_json() const {
  nlohmann::json j;
  j["version"] = kVersion;
  j["name"] = name;
  j["seed"] = seed;
  j["config-hash"] = config_hash;
  j["replicas"] = replicas;
  j["truncated"] = truncated;
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["estimates"] = nlohmann::json::object();
  for (const auto& [k, st] : estimates) {
    nlohmann::json e;
    e["mean"] = st.mean();
    e["stderr"] = st.stderror();
    e["count"] = st.count();
    e["values"] = st.values;
    j["estimates"][k] = e;
  }
  nlohmann::json cj = nlohmann::json::array();
  for (const auto& c : checks) cj.push_back({{"label", c.label}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = cj;
  j["notes"] = notes;
  j["all_pass"] = all_pass();
  return j.dump(2);
}

}  // namespace kex
