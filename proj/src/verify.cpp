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

#include "kex/verify.hpp"

#include <algorithm>

#include "kex/rng.hpp"

namespace kex {

RandomInstance make_instance(Capacity k, std::uint64_t seed, const InstanceParams& p) {
  Rng rng(seed);
  int w = std::max(8, p.window_sites);
  SiteRange window{0, w - 1};
  SiteRange clocked{1, w - 2};
  double horizon = 1.0 + rng.next_unit() * (p.t_max - 1.0);

  OccupancyConfig occ;
  occ.k = k;
  occ.window = window;
  occ.occ.resize(static_cast<std::size_t>(w));
  if (k.is_finite()) {
    // Mix of regimes: mostly uniform, occasionally sparse or crowded.
    double style = rng.next_unit();
    for (int i = 0; i < w; ++i) {
      int v;
      if (style < 0.15)
        v = rng.next_bernoulli(0.15) ? 1 : 0;
      else if (style > 0.85)
        v = k.value() - (rng.next_bernoulli(0.15) ? 1 : 0);
      else
        v = static_cast<int>(rng.next_unit() * (k.value() + 1));
      occ.occ[static_cast<std::size_t>(i)] = std::min(v, k.value());
    }
  } else {
    double mean = 0.3 + 1.7 * rng.next_unit();
    for (int i = 0; i < w; ++i)
      occ.occ[static_cast<std::size_t>(i)] = rng.next_geometric_mean(mean);
  }
  occ.validate();

  int x0 = window.lo + w / 4 + static_cast<int>(rng.next_unit() * (w / 2));
  if (k.full(occ.at(x0))) occ.at(x0) = k.value() - 1;

  EpochTable clocks =
      EpochTable::generate(RateSpec::single(), clocked, horizon, mix_seed(seed, 0xc1c1ULL));
  return {std::move(occ), std::move(clocks), horizon, x0};
}

SuiteReport verify_envelope(Capacity k, int instances, std::uint64_t seed,
                            const InstanceParams& p) {
  SuiteReport rep;
  rep.name = "envelope";
  rep.instances = instances;
  for (int inst = 0; inst < instances; ++inst) {
    RandomInstance ri = make_instance(k, mix_seed(seed, static_cast<std::uint64_t>(inst)), p);
    HeightConfig z0 = height_from_occupancy(ri.occ, ri.occ.window.lo - 1, 0);
    auto traj = evolve_height(z0, ri.clocks, ri.horizon);
    const HeightConfig& zt = traj.final_state();
    WedgeFamily family = evolve_family(k, z0.window, ri.clocks, ri.horizon);
    for (int i = zt.window.lo; i <= zt.window.hi; ++i) {
      EnvelopeValue ev = envelope_at(z0, family, i);
      if (ev.value != zt.at(i)) {
        ++rep.failures;
        rep.notes.push_back("envelope mismatch at instance " + std::to_string(inst) +
                            ", site " + std::to_string(i));
        break;
      }
      if (ev.boundary_attained) ++rep.flags;
    }
  }
  return rep;
}

SuiteReport verify_three_way(Capacity k, int instances, std::uint64_t seed,
                             const InstanceParams& p) {
  SuiteReport rep;
  rep.name = "three-way second class";
  rep.instances = instances;
  for (int inst = 0; inst < instances; ++inst) {
    RandomInstance ri = make_instance(k, mix_seed(seed, 0xabcULL + inst), p);
    CoupledScanOptions opt;
    opt.check_dual = true;
    opt.track_witness = true;
    opt.check_statements = (inst % 10 == 0);  // full sign sweep is quadratic
    CoupledScan scan = coupled_scan(ri.occ, ri.x0, ri.clocks, ri.horizon, opt);
    SecondClassRun direct = second_class_direct(ri.occ, ri.x0, ri.clocks, ri.horizon);

    bool ok = direct.x == scan.discrepancy_path;
    for (const auto& sm : scan.samples)
      ok = ok && sm.x_formula == sm.x_discrepancy && sm.x_dual == sm.x_discrepancy;
    if (!scan.statements_hold) {
      ++rep.failures;
      rep.notes.push_back("formula sign conditions failed at instance " +
                          std::to_string(inst));
    }
    if (!ok) {
      ++rep.failures;
      rep.notes.push_back("path disagreement at instance " + std::to_string(inst));
    }
    if (scan.any_window_exhausted) ++rep.flags;
    if (!scan.witness_monotone) ++rep.findings;
  }
  return rep;
}

SuiteReport verify_eta_z(Capacity k, int instances, std::uint64_t seed,
                         const InstanceParams& p) {
  SuiteReport rep;
  rep.name = "occupancy/height equivalence + conservation";
  rep.instances = instances;
  for (int inst = 0; inst < instances; ++inst) {
    RandomInstance ri = make_instance(k, mix_seed(seed, 0x5a5aULL + inst), p);
    long long mass = ri.occ.total();
    HeightConfig z = height_from_occupancy(ri.occ, ri.occ.window.lo - 1, 0);
    OccupancyConfig eta = ri.occ;

    bool ok = true;
    ri.clocks.for_each_event(ri.horizon, [&](const Event& e) {
      apply_occupancy_epoch(eta, e.site, e.batch);
      // Height max-rule, kept in lockstep.
      std::int64_t cand = z.at(e.site) - 1;
      if (cand < z.at(e.site - 1)) cand = z.at(e.site - 1);
      if (z.k.is_finite()) {
        std::int64_t fl = z.at(e.site + 1) - z.k.value();
        if (cand < fl) cand = fl;
      }
      z.at(e.site) = cand;
      // Differencing the height must reproduce the occupancies exactly.
      for (int i = e.site - 1; i <= e.site + 1; ++i)
        if (eta.window.contains(i) && eta.at(i) != z.at(i) - z.at(i - 1)) ok = false;
      if (eta.total() != mass) ok = false;
    });
    // Full-window check at the end, not just around touched sites.
    for (int i = eta.window.lo; i <= eta.window.hi; ++i)
      if (eta.at(i) != z.at(i) - z.at(i - 1)) ok = false;
    if (eta.total() != mass) ok = false;

    if (!ok) {
      ++rep.failures;
      rep.notes.push_back("equivalence broken at instance " + std::to_string(inst));
    }
  }
  return rep;
}

SuiteReport verify_restart(Capacity k, int instances, std::uint64_t seed,
                           const InstanceParams& p) {
  SuiteReport rep;
  rep.name = "restart identities";
  rep.instances = instances;
  for (int inst = 0; inst < instances; ++inst) {
    RandomInstance ri = make_instance(k, mix_seed(seed, 0x9e9eULL + inst), p);
    double tau = 0.5 * ri.horizon;

    HeightConfig z0 = height_from_occupancy(ri.occ, ri.occ.window.lo - 1, 0);
    EvolveOptions opt;
    opt.snapshot_times = {tau};
    auto traj = evolve_height(z0, ri.clocks, ri.horizon, opt);
    const HeightConfig& z_tau = traj.state_at(tau);
    const HeightConfig& z_end = traj.final_state();

    EpochTable shifted = ri.clocks.shifted(tau);
    WedgeFamily family = evolve_family(k, z_tau.window, shifted, ri.horizon - tau);

    bool ok = true;
    for (int i = z_end.window.lo; i <= z_end.window.hi; ++i) {
      EnvelopeValue ev = envelope_at(z_tau, family, i);
      if (ev.value != z_end.at(i)) ok = false;
    }

    // Restarted particle formula against the discrepancy path.
    XPath path = second_class_discrepancy(ri.occ, ri.x0, ri.clocks, ri.horizon);
    int x_tau = path.at(tau);
    int x_end = path.last();
    Witnessed w = second_class_variational(z_end, z_tau, family, x_tau);
    if (w.x != x_end) ok = false;
    if (w.window_exhausted) ++rep.flags;

    if (!ok) {
      ++rep.failures;
      rep.notes.push_back("restart identity failed at instance " + std::to_string(inst));
    }
  }
  return rep;
}

SuiteReport verify_witness_monitor(Capacity k, int instances, std::uint64_t seed,
                                   const InstanceParams& p) {
  SuiteReport rep;
  rep.name = "maximal witness monitor";
  rep.instances = instances;
  for (int inst = 0; inst < instances; ++inst) {
    RandomInstance ri = make_instance(k, mix_seed(seed, 0x717171ULL + inst), p);
    CoupledScanOptions opt;
    opt.check_dual = false;
    opt.track_witness = true;
    CoupledScan scan = coupled_scan(ri.occ, ri.x0, ri.clocks, ri.horizon, opt);
    bool witness_always_found = true;
    for (const auto& sm : scan.samples)
      if (!sm.witness_max) witness_always_found = false;
    if (!witness_always_found) {
      ++rep.failures;
      rep.notes.push_back("missing witness at instance " + std::to_string(inst));
    }
    if (!scan.witness_monotone) {
      ++rep.findings;
      rep.notes.push_back("FINDING: maximal witness decreased at instance " +
                          std::to_string(inst));
    }
  }
  return rep;
}

}  // namespace kex
