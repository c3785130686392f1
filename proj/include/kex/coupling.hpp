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

#ifndef KEX_COUPLING_HPP_
#define KEX_COUPLING_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "kex/clocks.hpp"
#include "kex/dynamics.hpp"
#include "kex/lattice.hpp"

namespace kex {

// Sentinel for "plus infinity" wedge values (infinite K, negative branch).
constexpr std::int64_t kWedgeInf = std::numeric_limits<std::int64_t>::max() / 4;

/// Growth process started from the wedge (0 on the right half, slope -K on
/// the left; +inf on the left for infinite K). Reads its jump commands from
/// the shared clocks with site indices translated by `shift`: the local site
/// j fires at epochs of the absolute clock j + shift. Update is the min-rule
///   v(j) <- min{ v(j)+1, v(j-1), v(j+1)+K },
/// which preserves v(j) <= v(j-1) and v(j) <= v(j+1)+K and never decreases.
class WedgeProcess {
 public:
  static WedgeProcess start(Capacity k, int shift, SiteRange window);

  Capacity capacity() const { return k_; }
  int shift() const { return shift_; }
  SiteRange window() const { return window_; }

  // Sites outside the stored window never fire (their clocks are outside the
  // table by the window contract), so they stay at their wedge values.
  std::int64_t at(int j) const {
    if (!window_.contains(j)) return wedge_value(k_, j);
    return v_[static_cast<std::size_t>(j - window_.lo)];
  }
  bool is_inf(int j) const { return at(j) >= kWedgeInf; }

  void apply_epoch(int absolute_site);
  void validate() const;  // monotonicity invariants

  static std::int64_t wedge_value(Capacity k, int j);

 private:
  Capacity k_ = Capacity::finite(1);
  int shift_ = 0;
  SiteRange window_;
  std::vector<std::int64_t> v_;
};

// Canonical window for a wedge process under the given clocks: covers every
// clocked local site plus one quiet site on each edge, so edge values stay at
// their wedge initial values and the stored evolution is exact.
SiteRange wedge_window(const EpochTable& clocks, int shift);

WedgeProcess evolve_wedge(Capacity k, int shift, const EpochTable& clocks, double t_end);
WedgeProcess evolve_wedge(Capacity k, int shift, const EpochTable& clocks, double t_end,
                          SiteRange window);

/// The translated-wedge family {xi^k : k in k_range}, all coupled to one
/// clock realization. Materialized per k; memory O(window^2) by design.
class WedgeFamily {
 public:
  WedgeFamily(Capacity k, SiteRange k_range, const EpochTable& clocks);

  Capacity capacity() const { return k_; }
  SiteRange k_range() const { return k_range_; }
  const WedgeProcess& at_k(int k) const {
    return members_[static_cast<std::size_t>(k - k_range_.lo)];
  }

  void apply_epoch(int absolute_site);

 private:
  Capacity k_;
  SiteRange k_range_;
  std::vector<WedgeProcess> members_;
};

WedgeFamily evolve_family(Capacity k, SiteRange k_range, const EpochTable& clocks,
                          double t_end);

struct EnvelopeValue {
  std::int64_t value;
  int argmax_k;
  bool boundary_attained;  // max value occurs at an end of the k-range
};

// The variational envelope max_k { z0(k) - xi^k(i - k) } over the family's
// k-range (restricted to k <= i when K is infinite). Equals the directly
// evolved height exactly whenever the k-range is adequate.
EnvelopeValue envelope_at(const HeightConfig& z0, const WedgeFamily& family, int i);

// Index window for the envelope at macroscopic position (site, t): half-width
// ceil(n * (t + 2)). Outside it the truncated maximum differs from the true
// height only with exponentially small probability.
SiteRange window_policy(int site, double t_macro, int n_scale);

// Second-class particle as the unique discrepancy between two height
// processes coupled through the same clocks, the raised one starting one
// level higher from x0 rightward. Throws logic_error if the single-step
// discrepancy structure is ever lost (bug trap).
XPath second_class_discrepancy(const OccupancyConfig& init, int x0, const EpochTable& clocks,
                               double t_end);

struct Witnessed {
  int x;                  // formula value
  bool window_exhausted;  // scan or witness search touched the window edge
};

// Position from the envelope formula: the least i whose height is attained by
// a translate with index k >= x0. `z_now` and `family` must be synchronized
// to the same time under the same clocks; `z0` is the initial height.
Witnessed second_class_variational(const HeightConfig& z_now, const HeightConfig& z0,
                                   const WedgeFamily& family, int x0);

// Dual form: 1 + the greatest i whose raised height is attained by a
// translate with index k < x0.
Witnessed second_class_variational_dual(const HeightConfig& zt_now, const HeightConfig& zt0,
                                        const WedgeFamily& family, int x0);

// Maximal witness index at the particle's current position; monitoring
// quantity only (claimed nondecreasing, unproven). nullopt if no witness.
std::optional<int> max_witness(const HeightConfig& z_now, const HeightConfig& z0,
                               const WedgeFamily& family, int x0, int x_now);

/// Joint event-synchronized evolution of the base height process, its raised
/// twin, and the full wedge family; evaluates the discrepancy and formula
/// positions after every epoch. This is the engine behind the exact
/// three-way agreement and monitoring suites.
struct CoupledScan {
  struct Sample {
    double time;
    int x_discrepancy;
    int x_formula;
    int x_dual;
    std::optional<int> witness_max;
  };
  std::vector<Sample> samples;  // one per epoch, plus the initial state
  XPath discrepancy_path;
  bool any_window_exhausted = false;
  bool witness_monotone = true;
  bool statements_hold = true;  // sign conditions of the formula at each epoch
};

struct CoupledScanOptions {
  bool check_dual = true;
  bool check_statements = false;  // full i x k sign sweep (slower)
  bool track_witness = true;
};

CoupledScan coupled_scan(const OccupancyConfig& init, int x0, const EpochTable& clocks,
                         double t_end, const CoupledScanOptions& opt = {});

}  // namespace kex

#endif  // KEX_COUPLING_HPP_
