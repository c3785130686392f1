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

#ifndef KEX_DYNAMICS_HPP_
#define KEX_DYNAMICS_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "kex/clocks.hpp"
#include "kex/lattice.hpp"

namespace kex {

struct LoggedEvent {
  double time;
  int site;
  int batch;
  int moved;  // particles actually transferred
};

template <class State>
struct Trajectory {
  std::vector<double> times;  // requested snapshot times plus t_end, ascending
  std::vector<State> states;  // state after all epochs <= time
  std::optional<std::vector<LoggedEvent>> event_log;

  const State& final_state() const { return states.back(); }
  const State& state_at(double t) const {
    for (std::size_t j = 0; j < times.size(); ++j)
      if (times[j] == t) return states[j];
    throw std::out_of_range("no snapshot at requested time");
  }
};

struct EvolveOptions {
  std::vector<double> snapshot_times;  // strictly inside [0, t_end], ascending
  bool log_events = false;
};

// Occupancy evolution: at an epoch of the (site, h) clock, b = min{h, eta(i),
// K - eta(i+1)} particles move from i to i+1. The window must contain every
// clocked site and its right neighbor; sites outside the clocked range are
// frozen. Total particle count over the window is conserved exactly.
Trajectory<OccupancyConfig> evolve_occupancy(OccupancyConfig init, const EpochTable& clocks,
                                             double t_end, const EvolveOptions& opt = {});

// Height evolution under the max-rule: at an epoch of the site-i clock,
//   z(i) <- max{ z(i)-1, z(i-1), z(i+1)-K },
// which is the left jump of the labeled particle suppressed whenever it would
// break the increment constraints. Single-particle clocks only; batch tables
// are handled by differencing the occupancy process instead.
Trajectory<HeightConfig> evolve_height(HeightConfig init, const EpochTable& clocks,
                                       double t_end, const EvolveOptions& opt = {});

/// Piecewise-constant integer path of a tracked particle.
struct XPath {
  int start = 0;
  std::vector<std::pair<double, int>> moves;  // (time, new site)

  int at(double t) const {
    int x = start;
    for (const auto& m : moves) {
      if (m.first > t) break;
      x = m.second;
    }
    return x;
  }
  int last() const { return moves.empty() ? start : moves.back().second; }
  friend bool operator==(const XPath&, const XPath&) = default;
};

struct SecondClassRun {
  Trajectory<OccupancyConfig> eta;
  XPath x;
};

// Second-class particle by its direct transition rules, with the host
// process evolving as usual. With X sitting at site i:
//   * epoch at i:   X jumps right iff eta(i) = 0 and eta(i+1) < K;
//   * epoch at i-1: X jumps left iff eta(i-1) >= 1 and eta(i) = K - 1
//     (the arriving particle fills the site under it).
// Rules read the pre-epoch state. Requires eta(x0) <= K-1 and a
// single-particle table. For K = infinity the particle never jumps left.
SecondClassRun second_class_direct(OccupancyConfig init, int x0, const EpochTable& clocks,
                                   double t_end, const EvolveOptions& opt = {});

// Single epoch of the occupancy dynamics; returns the particles moved.
inline int apply_occupancy_epoch(OccupancyConfig& cfg, int site, int batch) {
  int from = cfg.at(site);
  int room = cfg.k.headroom(cfg.at(site + 1));
  int b = batch < from ? batch : from;
  if (room < b) b = room;
  if (b > 0) {
    cfg.at(site) -= b;
    cfg.at(site + 1) += b;
    if (cfg.at(site + 1) > kOccupancyCap)
      throw std::runtime_error("occupancy exceeded practical cap");
  }
  return b;
}

inline void check_occupancy_window(const OccupancyConfig& cfg, const EpochTable& clocks) {
  SiteRange need{clocks.sites().lo, clocks.sites().hi + 1};
  if (!cfg.window.contains(need))
    throw std::invalid_argument("occupancy window does not cover clocked sites + 1");
}

// Low-level sweep shared by the evolutions and the experiment estimators.
// Applies every epoch with time <= t_end in order and calls
// visit(time, site, moved) after each one.
template <class Visit>
void sweep_occupancy(OccupancyConfig& cfg, const EpochTable& clocks, double t_end,
                     Visit&& visit) {
  check_occupancy_window(cfg, clocks);
  clocks.for_each_event(t_end, [&](const Event& e) {
    int moved = apply_occupancy_epoch(cfg, e.site, e.batch);
    visit(e.time, e.site, moved);
  });
}

}  // namespace kex

#endif  // KEX_DYNAMICS_HPP_
