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

#ifndef KEX_LATTICE_HPP_
#define KEX_LATTICE_HPP_

#include <cstdint>
#include <vector>

#include "kex/capacity.hpp"

namespace kex {

// Practical cap for unbounded occupancies (geometric initial data is a.s.
// finite per site; blowing past this means a bug, not physics).
constexpr int kOccupancyCap = 1 << 30;

/// Occupancy numbers eta(i) on a finite window, 0 <= eta(i) <= K.
struct OccupancyConfig {
  Capacity k = Capacity::finite(1);
  SiteRange window;
  std::vector<int> occ;

  int at(int site) const { return occ[static_cast<std::size_t>(site - window.lo)]; }
  int& at(int site) { return occ[static_cast<std::size_t>(site - window.lo)]; }
  long long total() const;
  long long sum(SiteRange r) const;  // inclusive partial sum
  void validate() const;

  friend bool operator==(const OccupancyConfig&, const OccupancyConfig&) = default;
};

/// Labeled-particle positions z(i) with increments 0 <= z(i+1)-z(i) <= K.
struct HeightConfig {
  Capacity k = Capacity::finite(1);
  SiteRange window;
  std::vector<std::int64_t> z;

  std::int64_t at(int i) const { return z[static_cast<std::size_t>(i - window.lo)]; }
  std::int64_t& at(int i) { return z[static_cast<std::size_t>(i - window.lo)]; }
  void validate() const;

  friend bool operator==(const HeightConfig&, const HeightConfig&) = default;
};

// Height from occupancy: z(anchor) = anchor_value and z(i) - z(i-1) = eta(i).
// The height window is [occ.window.lo - 1, occ.window.hi].
HeightConfig height_from_occupancy(const OccupancyConfig& cfg, int anchor_site,
                                   std::int64_t anchor_value);

// Inverse of height_from_occupancy; the occupancy window shrinks by one on
// the left. Round-trip is the identity.
OccupancyConfig occupancy_from_height(const HeightConfig& cfg);

/// Macroscopic initial density profile: piecewise constant on a bounded
/// segment, extended by its edge values outside the segment.
struct ProfileSpec {
  struct Piece {
    double a, b;  // half-open interval (a, b]
    double rho;
  };
  std::vector<Piece> pieces;

  void validate(double rho_max) const;  // densities within [0, rho_max]
  double density(double x) const;       // edge-clamped
  // Antiderivative with u0(0) = 0, using the edge-clamped extension.
  double integral0(double x) const;
  double span_lo() const { return pieces.front().a; }
  double span_hi() const { return pieces.back().b; }

  static ProfileSpec constant(double rho, double a, double b);
  static ProfileSpec riemann(double left, double right, double extent);
};

enum class InitFamily { deterministic_rounding, bernoulli, geometric };

// Microscopic initial data realizing the profile at scale n: site i covers
// the macroscopic cell ((i-1)/n, i/n]. deterministic_rounding matches every
// window sum of n * integral to within 2 particles; bernoulli requires K = 1;
// geometric requires K = infinity and uses the stationary single-site law.
OccupancyConfig sample_initial(const ProfileSpec& profile, int n, InitFamily family,
                               Capacity k, SiteRange window, std::uint64_t seed);

// Window derived from the profile's own segment.
SiteRange profile_window(const ProfileSpec& profile, int n);

}  // namespace kex

#endif  // KEX_LATTICE_HPP_
