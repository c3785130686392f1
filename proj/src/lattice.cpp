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

#include "kex/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kex/rng.hpp"

namespace kex {

long long OccupancyConfig::total() const {
  long long s = 0;
  for (int v : occ) s += v;
  return s;
}

long long OccupancyConfig::sum(SiteRange r) const {
  long long s = 0;
  for (int i = r.lo; i <= r.hi; ++i) s += at(i);
  return s;
}

void OccupancyConfig::validate() const {
  if (occ.size() != static_cast<std::size_t>(window.size()))
    throw std::invalid_argument("occupancy array does not match window");
  for (int v : occ) {
    if (v < 0 || !k.admits(v)) throw std::invalid_argument("occupancy outside [0, K]");
    if (v > kOccupancyCap) throw std::invalid_argument("occupancy exceeds practical cap");
  }
}

void HeightConfig::validate() const {
  if (z.size() != static_cast<std::size_t>(window.size()))
    throw std::invalid_argument("height array does not match window");
  for (int i = window.lo + 1; i <= window.hi; ++i) {
    std::int64_t gap = at(i) - at(i - 1);
    if (gap < 0 || !k.admits(gap > kOccupancyCap ? kOccupancyCap + 1 : static_cast<int>(gap)))
      throw std::invalid_argument("height increments violate [0, K]");
  }
}

HeightConfig height_from_occupancy(const OccupancyConfig& cfg, int anchor_site,
                                   std::int64_t anchor_value) {
  cfg.validate();
  HeightConfig h;
  h.k = cfg.k;
  h.window = {cfg.window.lo - 1, cfg.window.hi};
  if (!h.window.contains(anchor_site)) throw std::invalid_argument("anchor outside window");
  h.z.assign(static_cast<std::size_t>(h.window.size()), 0);
  h.at(anchor_site) = anchor_value;
  for (int i = anchor_site + 1; i <= h.window.hi; ++i) h.at(i) = h.at(i - 1) + cfg.at(i);
  for (int i = anchor_site - 1; i >= h.window.lo; --i) h.at(i) = h.at(i + 1) - cfg.at(i + 1);
  return h;
}

OccupancyConfig occupancy_from_height(const HeightConfig& cfg) {
  OccupancyConfig o;
  o.k = cfg.k;
  o.window = {cfg.window.lo + 1, cfg.window.hi};
  o.occ.reserve(static_cast<std::size_t>(o.window.size()));
  for (int i = o.window.lo; i <= o.window.hi; ++i)
    o.occ.push_back(static_cast<int>(cfg.at(i) - cfg.at(i - 1)));
  o.validate();
  return o;
}

void ProfileSpec::validate(double rho_max) const {
  if (pieces.empty()) throw std::invalid_argument("empty profile");
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const auto& p = pieces[j];
    if (!(p.a < p.b)) throw std::invalid_argument("degenerate profile piece");
    if (p.rho < 0.0 || p.rho > rho_max)
      throw std::invalid_argument("profile density out of range");
    if (j > 0 && pieces[j - 1].b != p.a)
      throw std::invalid_argument("profile pieces must partition a segment");
  }
}

double ProfileSpec::density(double x) const {
  if (x <= pieces.front().a) return pieces.front().rho;
  for (const auto& p : pieces)
    if (x <= p.b) return p.rho;
  return pieces.back().rho;
}

double ProfileSpec::integral0(double x) const {
  // Integral of the edge-clamped density from 0 to x.
  auto cumulative_from_lo = [&](double y) {
    double s = 0.0;
    for (const auto& p : pieces) {
      if (y <= p.a) break;
      s += p.rho * (std::min(y, p.b) - p.a);
    }
    if (y > pieces.back().b) s += pieces.back().rho * (y - pieces.back().b);
    if (y < pieces.front().a) s = pieces.front().rho * (y - pieces.front().a);
    return s;
  };
  return cumulative_from_lo(x) - cumulative_from_lo(0.0);
}

ProfileSpec ProfileSpec::constant(double rho, double a, double b) {
  return ProfileSpec{{{a, b, rho}}};
}

ProfileSpec ProfileSpec::riemann(double left, double right, double extent) {
  return ProfileSpec{{{-extent, 0.0, left}, {0.0, extent, right}}};
}

SiteRange profile_window(const ProfileSpec& profile, int n) {
  int lo = static_cast<int>(std::floor(n * profile.span_lo())) + 1;
  int hi = static_cast<int>(std::floor(n * profile.span_hi()));
  return {lo, hi};
}

OccupancyConfig sample_initial(const ProfileSpec& profile, int n, InitFamily family,
                               Capacity k, SiteRange window, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("scale n must be >= 1");
  profile.validate(k.is_finite() ? static_cast<double>(k.value())
                                 : std::numeric_limits<double>::infinity());
  if (family == InitFamily::bernoulli && (!k.is_finite() || k.value() != 1))
    throw std::invalid_argument("bernoulli initial data requires K = 1");
  if (family == InitFamily::geometric && k.is_finite())
    throw std::invalid_argument("geometric initial data requires K = infinity");

  OccupancyConfig cfg;
  cfg.k = k;
  cfg.window = window;
  cfg.occ.resize(static_cast<std::size_t>(window.size()), 0);

  for (int i = window.lo; i <= window.hi; ++i) {
    // Mean density over the site's macroscopic cell ((i-1)/n, i/n].
    double cell = n * (profile.integral0(static_cast<double>(i) / n) -
                       profile.integral0(static_cast<double>(i - 1) / n));
    switch (family) {
      case InitFamily::deterministic_rounding: {
        // The nudge keeps exactly-integer cumulative masses from straddling
        // a floor boundary through floating-point noise.
        double hi_v = std::floor(n * profile.integral0(static_cast<double>(i) / n) + 1e-9);
        double lo_v =
            std::floor(n * profile.integral0(static_cast<double>(i - 1) / n) + 1e-9);
        cfg.at(i) = static_cast<int>(hi_v - lo_v);
        break;
      }
      case InitFamily::bernoulli: {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(i))));
        cfg.at(i) = rng.next_bernoulli(cell) ? 1 : 0;
        break;
      }
      case InitFamily::geometric: {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(i))));
        cfg.at(i) = rng.next_geometric_mean(cell);
        break;
      }
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace kex
