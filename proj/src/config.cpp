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

#include "kex/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kex/rng.hpp"

namespace kex {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
  return out;
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) +
                                                 ": empty key");
    cfg.items_.emplace_back(key, value);
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : items_)
    if (k == key) {
      v = value;
      return;
    }
  items_.emplace_back(key, value);
}

void RunConfig::apply_override(const std::string& kv) {
  std::size_t eq = kv.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("override must be key=value");
  set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
}

bool RunConfig::has(const std::string& key) const { return get(key).has_value(); }

std::optional<std::string> RunConfig::get(const std::string& key) const {
  for (const auto& [k, v] : items_)
    if (k == key) return v;
  return std::nullopt;
}

std::vector<std::string> RunConfig::get_all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : items_)
    if (k == key) out.push_back(v);
  return out;
}

std::string RunConfig::require(const std::string& key) const {
  auto v = get(key);
  if (!v) throw std::invalid_argument("missing required config key: " + key);
  return *v;
}

double RunConfig::as_double(const std::string& key) const {
  try {
    return std::stod(require(key));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (...) {
    throw std::invalid_argument("config key " + key + " is not a number");
  }
}

double RunConfig::as_double_or(const std::string& key, double dflt) const {
  return has(key) ? as_double(key) : dflt;
}

int RunConfig::as_int(const std::string& key) const {
  try {
    return std::stoi(require(key));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (...) {
    throw std::invalid_argument("config key " + key + " is not an integer");
  }
}

int RunConfig::as_int_or(const std::string& key, int dflt) const {
  return has(key) ? as_int(key) : dflt;
}

std::uint64_t RunConfig::as_seed(const std::string& key) const {
  auto v = get(key);
  if (!v) throw std::invalid_argument("a seed is required for stochastic runs");
  try {
    return std::stoull(*v);
  } catch (...) {
    throw std::invalid_argument("config key " + key + " is not a valid seed");
  }
}

Capacity RunConfig::capacity() const {
  std::string v = require("k");
  if (v == "inf" || v == "infinity") return Capacity::infinite();
  int k = 0;
  try {
    k = std::stoi(v);
  } catch (...) {
    throw std::invalid_argument("config key k must be a positive integer or inf");
  }
  return Capacity::finite(k);
}

std::optional<RateSpec> RunConfig::rate_spec() const {
  auto v = get("rates");
  if (!v) return std::nullopt;
  std::vector<BatchRate> rates;
  for (const std::string& tok : split(*v, ',')) {
    if (tok.empty()) continue;
    auto parts = split(tok, ':');
    if (parts.size() != 2) throw std::invalid_argument("rates entries must be h:beta");
    rates.push_back({std::stoi(parts[0]), std::stod(parts[1])});
  }
  if (rates.empty()) throw std::invalid_argument("empty rates list");
  return RateSpec::batch(std::move(rates));
}

ProfileSpec RunConfig::profile() const {
  ProfileSpec p;
  for (const std::string& tok : get_all("piece")) {
    auto parts = split(tok, ',');
    if (parts.size() != 3)
      throw std::invalid_argument("piece entries must be a,b,rho");
    p.pieces.push_back({std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])});
  }
  if (p.pieces.empty()) throw std::invalid_argument("no profile pieces configured");
  return p;
}

InitFamily RunConfig::family() const {
  std::string v = get("family").value_or("deterministic");
  if (v == "deterministic" || v == "deterministic-rounding")
    return InitFamily::deterministic_rounding;
  if (v == "bernoulli") return InitFamily::bernoulli;
  if (v == "geometric") return InitFamily::geometric;
  throw std::invalid_argument("unknown init family: " + v);
}

std::vector<std::pair<double, double>> RunConfig::intervals() const {
  std::vector<std::pair<double, double>> out;
  for (const std::string& tok : get_all("interval")) {
    auto parts = split(tok, ',');
    if (parts.size() != 2) throw std::invalid_argument("interval entries must be a,b");
    out.emplace_back(std::stod(parts[0]), std::stod(parts[1]));
  }
  return out;
}

void RunConfig::restrict_keys(const std::vector<std::string>& allowed) const {
  for (const auto& [k, v] : items_) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw std::invalid_argument("unknown config key: " + k);
  }
}

std::string RunConfig::canonical_text() const {
  auto sorted = items_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  for (const auto& [k, v] : sorted) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

std::uint64_t RunConfig::hash() const {
  // FNV-1a over the canonical text.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace kex
