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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kex/coupling.hpp"
#include "kex/rng.hpp"
#include "kex/verify.hpp"

using namespace kex;

TEST_CASE("wedge starts at its initial profile") {
  for (int kv : {1, 3}) {
    WedgeProcess w = WedgeProcess::start(Capacity::finite(kv), 0, {-5, 5});
    for (int j = -5; j <= 5; ++j)
      CHECK(w.at(j) == (j >= 0 ? 0 : -static_cast<std::int64_t>(kv) * j));
  }
  WedgeProcess w = WedgeProcess::start(Capacity::infinite(), 0, {-5, 5});
  for (int j = -5; j < 0; ++j) CHECK(w.is_inf(j));
  for (int j = 0; j <= 5; ++j) CHECK(w.at(j) == 0);
}

TEST_CASE("growth at the apex is bounded by its clock count") {
  EpochTable clocks = EpochTable::generate(RateSpec::single(), {-8, 8}, 6.0, 31);
  WedgeProcess w = evolve_wedge(Capacity::finite(1), 0, clocks, 6.0);
  CHECK(w.at(0) <= static_cast<std::int64_t>(clocks.stream(0, 1).size()));
  CHECK_NOTHROW(w.validate());
}

TEST_CASE("wedge growth law does not depend on the translation index") {
  // Translation invariance: empirical means of the value at the apex for
  // shifts 0 and 17 agree within 4 joint standard errors over 500 seeds.
  const int reps = 500;
  double sum0 = 0, sum17 = 0, sq0 = 0, sq17 = 0;
  for (int r = 0; r < reps; ++r) {
    EpochTable c0 = EpochTable::generate(RateSpec::single(), {-12, 12}, 3.0,
                                         replica_seed(7100, r));
    EpochTable c17 = EpochTable::generate(RateSpec::single(), {5, 29}, 3.0,
                                          replica_seed(7200, r));
    double a = static_cast<double>(evolve_wedge(Capacity::finite(1), 0, c0, 3.0).at(0));
    double b = static_cast<double>(evolve_wedge(Capacity::finite(1), 17, c17, 3.0).at(0));
    sum0 += a;
    sq0 += a * a;
    sum17 += b;
    sq17 += b * b;
  }
  double m0 = sum0 / reps, m17 = sum17 / reps;
  double v0 = (sq0 - reps * m0 * m0) / (reps - 1);
  double v17 = (sq17 - reps * m17 * m17) / (reps - 1);
  double joint = std::sqrt(v0 / reps + v17 / reps);
  CHECK(std::fabs(m0 - m17) <= 4.0 * joint);
}

TEST_CASE("the envelope touches the initial height at its apex") {
  RandomInstance ri = make_instance(Capacity::finite(2), 404);
  HeightConfig z0 = height_from_occupancy(ri.occ, ri.occ.window.lo - 1, 0);
  WedgeFamily fam(Capacity::finite(2), z0.window, ri.clocks);  // time zero
  for (int i = z0.window.lo + 2; i <= z0.window.hi - 2; i += 3) {
    EnvelopeValue ev = envelope_at(z0, fam, i);
    CHECK(ev.value == z0.at(i));
  }
}

TEST_CASE("the envelope reproduces the direct height evolution exactly") {
  // 50 seeds, 30-site windows, horizon 3; also covered at scale by the
  // acceptance suite.
  InstanceParams p;
  p.window_sites = 30;
  p.t_max = 3.0;
  SuiteReport rep = verify_envelope(Capacity::finite(1), 50, 1234, p);
  CHECK(rep.failures == 0);
  SuiteReport rep_inf = verify_envelope(Capacity::infinite(), 25, 1235, p);
  CHECK(rep_inf.failures == 0);
}

TEST_CASE("translate ordering holds across the family") {
  RandomInstance ri = make_instance(Capacity::finite(2), 505);
  HeightConfig z0 = height_from_occupancy(ri.occ, ri.occ.window.lo - 1, 0);
  WedgeFamily fam = evolve_family(Capacity::finite(2), z0.window, ri.clocks, ri.horizon);
  for (int i = z0.window.lo + 4; i <= z0.window.hi - 4; i += 5) {
    for (int k = z0.window.lo; k < z0.window.hi; ++k) {
      int l = k + 1;
      std::int64_t wl = z0.at(l) - fam.at_k(l).at(i - l);
      std::int64_t wk = z0.at(k) - fam.at_k(k).at(i - k);
      CHECK(wl <= wk + (z0.at(l) - z0.at(k)));
    }
  }
}

TEST_CASE("window policy matches its formula") {
  SiteRange w = window_policy(0, 1.0, 100);
  CHECK(w.lo == -300);
  CHECK(w.hi == 300);
  SiteRange w2 = window_policy(40, 0.5, 10);
  CHECK(w2.lo == 40 - 25);
  CHECK(w2.hi == 40 + 25);
}

TEST_CASE("discrepancy coupling agrees with the direct rules") {
  for (int kv : {1, 2, 3}) {
    for (int inst = 0; inst < 30; ++inst) {
      RandomInstance ri =
          make_instance(Capacity::finite(kv), mix_seed(600 + kv, inst));
      XPath a = second_class_discrepancy(ri.occ, ri.x0, ri.clocks, ri.horizon);
      SecondClassRun b = second_class_direct(ri.occ, ri.x0, ri.clocks, ri.horizon);
      CHECK(a == b.x);
    }
  }
}

TEST_CASE("three-way agreement with sign conditions and dual form") {
  for (int kv : {1, 2, 3}) {
    SuiteReport rep = verify_three_way(Capacity::finite(kv), 25, 8800 + kv);
    CHECK(rep.failures == 0);
    CHECK(rep.findings == 0);
  }
}

TEST_CASE("with infinite capacity the discrepancy never moves left") {
  for (int inst = 0; inst < 20; ++inst) {
    RandomInstance ri = make_instance(Capacity::infinite(), mix_seed(901, inst));
    XPath p = second_class_discrepancy(ri.occ, ri.x0, ri.clocks, ri.horizon);
    int prev = p.start;
    for (const auto& m : p.moves) {
      CHECK(m.second == prev + 1);
      prev = m.second;
    }
  }
}

TEST_CASE("the maximal witness starts at or above the particle") {
  RandomInstance ri = make_instance(Capacity::finite(2), 111);
  HeightConfig z0 = height_from_occupancy(ri.occ, ri.occ.window.lo - 1, 0);
  WedgeFamily fam(Capacity::finite(2), z0.window, ri.clocks);
  auto w = max_witness(z0, z0, fam, ri.x0, ri.x0);
  REQUIRE(w.has_value());
  CHECK(*w >= ri.x0);
}

TEST_CASE("maximal witness series is monotone and finite on random instances") {
  for (int kv : {1, 2, 3}) {
    SuiteReport rep = verify_witness_monitor(Capacity::finite(kv), 25, 2600 + kv);
    CHECK(rep.failures == 0);   // witness always exists inside the window
    CHECK(rep.findings == 0);   // no monotonicity violation observed
  }
}

TEST_CASE("restart identities reproduce the direct paths") {
  for (int kv : {1, 2}) {
    SuiteReport rep = verify_restart(Capacity::finite(kv), 15, 3500 + kv);
    CHECK(rep.failures == 0);
  }
  SuiteReport rep = verify_restart(Capacity::infinite(), 10, 3600);
  CHECK(rep.failures == 0);
}

TEST_CASE("restarting at zero is the identity") {
  RandomInstance ri = make_instance(Capacity::finite(2), 777);
  HeightConfig z0 = height_from_occupancy(ri.occ, ri.occ.window.lo - 1, 0);
  auto direct = evolve_height(z0, ri.clocks, ri.horizon);
  EpochTable shifted = ri.clocks.shifted(0.0);
  WedgeFamily fam = evolve_family(Capacity::finite(2), z0.window, shifted, ri.horizon);
  for (int i = z0.window.lo; i <= z0.window.hi; ++i)
    CHECK(envelope_at(z0, fam, i).value == direct.final_state().at(i));
}
