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

#include "kex/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace kex {

namespace {

void check_snapshot_times(const EvolveOptions& opt, double t_end) {
  double prev = 0.0;
  for (double s : opt.snapshot_times) {
    if (s < prev || s > t_end) throw std::invalid_argument("bad snapshot times");
    prev = s;
  }
}

// Drives snapshots for any state evolved event by event.
template <class State, class Apply>
Trajectory<State> run_events(State init, const EpochTable& clocks, double t_end,
                             const EvolveOptions& opt, Apply&& apply) {
  check_snapshot_times(opt, t_end);
  Trajectory<State> out;
  if (opt.log_events) out.event_log.emplace();
  std::size_t next_snap = 0;
  State cur = std::move(init);
  clocks.for_each_event(t_end, [&](const Event& e) {
    while (next_snap < opt.snapshot_times.size() && opt.snapshot_times[next_snap] < e.time) {
      out.times.push_back(opt.snapshot_times[next_snap++]);
      out.states.push_back(cur);
    }
    int moved = apply(cur, e);
    if (out.event_log) out.event_log->push_back({e.time, e.site, e.batch, moved});
  });
  while (next_snap < opt.snapshot_times.size()) {
    out.times.push_back(opt.snapshot_times[next_snap++]);
    out.states.push_back(cur);
  }
  out.times.push_back(t_end);
  out.states.push_back(std::move(cur));
  return out;
}

// Max-rule height update; returns 1 if the particle moved.
int apply_height_epoch(HeightConfig& cfg, int site) {
  std::int64_t cand = cfg.at(site) - 1;
  if (cand < cfg.at(site - 1)) cand = cfg.at(site - 1);
  if (cfg.k.is_finite()) {
    std::int64_t floor_r = cfg.at(site + 1) - cfg.k.value();
    if (cand < floor_r) cand = floor_r;
  }
  int moved = cand < cfg.at(site) ? 1 : 0;
  cfg.at(site) = cand;
  return moved;
}

void check_height_window(const HeightConfig& cfg, const EpochTable& clocks) {
  SiteRange need{clocks.sites().lo - 1, clocks.sites().hi + 1};
  if (!cfg.window.contains(need))
    throw std::invalid_argument("height window does not cover clocked sites +- 1");
}

}  // namespace

Trajectory<OccupancyConfig> evolve_occupancy(OccupancyConfig init, const EpochTable& clocks,
                                             double t_end, const EvolveOptions& opt) {
  init.validate();
  check_occupancy_window(init, clocks);
  return run_events(std::move(init), clocks, t_end, opt,
                    [](OccupancyConfig& c, const Event& e) {
                      return apply_occupancy_epoch(c, e.site, e.batch);
                    });
}

Trajectory<HeightConfig> evolve_height(HeightConfig init, const EpochTable& clocks,
                                       double t_end, const EvolveOptions& opt) {
  init.validate();
  check_height_window(init, clocks);
  if (!clocks.is_single())
    throw std::invalid_argument("height evolution is defined for single-particle clocks");
  return run_events(std::move(init), clocks, t_end, opt,
                    [](HeightConfig& c, const Event& e) {
                      int moved = apply_height_epoch(c, e.site);
                      // The update preserves the increment constraints around
                      // the touched site by construction; cheap recheck.
                      std::int64_t gl = c.at(e.site) - c.at(e.site - 1);
                      std::int64_t gr = c.at(e.site + 1) - c.at(e.site);
                      if (gl < 0 || gr < 0 ||
                          (c.k.is_finite() &&
                           (gl > c.k.value() || gr > c.k.value())))
                        throw std::logic_error("height increments broken by update");
                      return moved;
                    });
}

SecondClassRun second_class_direct(OccupancyConfig init, int x0, const EpochTable& clocks,
                                   double t_end, const EvolveOptions& opt) {
  init.validate();
  check_occupancy_window(init, clocks);
  if (!clocks.is_single())
    throw std::invalid_argument("second-class tracking requires single-particle clocks");
  if (!init.window.contains(x0)) throw std::invalid_argument("start site outside window");
  if (init.k.full(init.at(x0)))
    throw std::invalid_argument("second-class particle placed at a full site");

  SecondClassRun run;
  run.x.start = x0;
  int x = x0;
  run.eta = run_events(std::move(init), clocks, t_end, opt,
                       [&](OccupancyConfig& c, const Event& e) {
                         // Transition rules read the pre-epoch state.
                         if (e.site == x) {
                           if (c.at(x) == 0 && !c.k.full(c.at(x + 1))) {
                             x += 1;
                             run.x.moves.emplace_back(e.time, x);
                           }
                         } else if (e.site == x - 1) {
                           if (c.at(x - 1) >= 1 && c.k.is_finite() &&
                               c.at(x) == c.k.value() - 1) {
                             x -= 1;
                             run.x.moves.emplace_back(e.time, x);
                           }
                         }
                         return apply_occupancy_epoch(c, e.site, e.batch);
                       });
  return run;
}

}  // namespace kex
