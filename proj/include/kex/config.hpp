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

#ifndef KEX_CONFIG_HPP_
#define KEX_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kex/capacity.hpp"
#include "kex/clocks.hpp"
#include "kex/lattice.hpp"

namespace kex {

/// Flat key = value run configuration. Repeated keys are allowed where a
/// list is natural (profile pieces, intervals). '#' starts a comment.
class RunConfig {
 public:
  static RunConfig from_file(const std::string& path);
  static RunConfig from_text(const std::string& text);

  void set(const std::string& key, const std::string& value);  // override/add
  void apply_override(const std::string& key_eq_value);

  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  std::vector<std::string> get_all(const std::string& key) const;

  std::string require(const std::string& key) const;
  double as_double(const std::string& key) const;
  double as_double_or(const std::string& key, double dflt) const;
  int as_int(const std::string& key) const;
  int as_int_or(const std::string& key, int dflt) const;
  std::uint64_t as_seed(const std::string& key) const;

  Capacity capacity() const;                      // key "k": integer or "inf"
  std::optional<RateSpec> rate_spec() const;      // key "rates": "h:beta,h:beta"
  ProfileSpec profile() const;                    // repeated key "piece": "a,b,rho"
  InitFamily family() const;                      // key "family"
  std::vector<std::pair<double, double>> intervals() const;  // repeated "interval"

  // Rejects any key not in the allowed set; call once per subcommand.
  void restrict_keys(const std::vector<std::string>& allowed) const;

  std::uint64_t hash() const;  // over the canonicalized key order
  std::string canonical_text() const;

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

}  // namespace kex

#endif  // KEX_CONFIG_HPP_
