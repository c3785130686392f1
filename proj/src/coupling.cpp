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

#include "kex/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kex {

namespace {

inline std::int64_t sat_add(std::int64_t v, std::int64_t d) {
  return v >= kWedgeInf ? kWedgeInf : v + d;
}

}  // namespace

std::int64_t WedgeProcess::wedge_value(Capacity k, int j) {
  if (j >= 0) return 0;
  if (!k.is_finite()) return kWedgeInf;
  return -static_cast<std::int64_t>(k.value()) * j;
}

WedgeProcess WedgeProcess::start(Capacity k, int shift, SiteRange window) {
  if (window.size() < 3) throw std::invalid_argument("wedge window too small");
  WedgeProcess p;
  p.k_ = k;
  p.shift_ = shift;
  p.window_ = window;
  p.v_.reserve(static_cast<std::size_t>(window.size()));
  for (int j = window.lo; j <= window.hi; ++j) p.v_.push_back(wedge_value(k, j));
  return p;
}

void WedgeProcess::apply_epoch(int absolute_site) {
  int j = absolute_site - shift_;
  if (j <= window_.lo || j >= window_.hi)
    throw std::logic_error("wedge process clocked at a window edge");
  std::int64_t& cur = v_[static_cast<std::size_t>(j - window_.lo)];
  if (cur >= kWedgeInf) return;  // infinite-K left branch never moves
  std::int64_t cand = cur + 1;
  std::int64_t left = at(j - 1);
  if (left < cand) cand = left;
  if (k_.is_finite()) {
    std::int64_t right = sat_add(at(j + 1), k_.value());
    if (right < cand) cand = right;
  }
  // Infinite K: the right-neighbor term is +inf and never binds.
  cur = cand;
}

void WedgeProcess::validate() const {
  for (int j = window_.lo + 1; j <= window_.hi; ++j) {
    if (at(j) > at(j - 1)) throw std::logic_error("wedge monotonicity broken");
    if (k_.is_finite() && at(j - 1) > sat_add(at(j), k_.value()))
      throw std::logic_error("wedge slope bound broken");
  }
}

SiteRange wedge_window(const EpochTable& clocks, int shift) {
  return {clocks.sites().lo - shift - 1, clocks.sites().hi - shift + 1};
}

WedgeProcess evolve_wedge(Capacity k, int shift, const EpochTable& clocks, double t_end,
                          SiteRange window) {
  SiteRange canon = wedge_window(clocks, shift);
  if (!window.contains(canon))
    throw std::invalid_argument("wedge window does not cover the clocked span");
  WedgeProcess p = WedgeProcess::start(k, shift, window);
  clocks.for_each_event(t_end, [&](const Event& e) { p.apply_epoch(e.site); });
  return p;
}

WedgeProcess evolve_wedge(Capacity k, int shift, const EpochTable& clocks, double t_end) {
  return evolve_wedge(k, shift, clocks, t_end, wedge_window(clocks, shift));
}

WedgeFamily::WedgeFamily(Capacity k, SiteRange k_range, const EpochTable& clocks)
    : k_(k), k_range_(k_range) {
  if (k_range.empty()) throw std::invalid_argument("empty translate range");
  members_.reserve(static_cast<std::size_t>(k_range.size()));
  for (int kk = k_range.lo; kk <= k_range.hi; ++kk)
    members_.push_back(WedgeProcess::start(k, kk, wedge_window(clocks, kk)));
}

void WedgeFamily::apply_epoch(int absolute_site) {
  for (auto& m : members_) m.apply_epoch(absolute_site);
}

WedgeFamily evolve_family(Capacity k, SiteRange k_range, const EpochTable& clocks,
                          double t_end) {
  WedgeFamily f(k, k_range, clocks);
  clocks.for_each_event(t_end, [&](const Event& e) { f.apply_epoch(e.site); });
  return f;
}

EnvelopeValue envelope_at(const HeightConfig& z0, const WedgeFamily& family, int i) {
  SiteRange kr = family.k_range();
  if (!z0.window.contains(kr))
    throw std::invalid_argument("initial height does not cover the translate range");
  bool found = false;
  EnvelopeValue best{0, 0, false};
  for (int k = kr.lo; k <= kr.hi; ++k) {
    const WedgeProcess& w = family.at_k(k);
    int j = i - k;
    if (w.is_inf(j)) continue;  // infinite K: only k <= i contribute
    std::int64_t val = z0.at(k) - w.at(j);
    if (!found || val > best.value) {
      best.value = val;
      best.argmax_k = k;
      best.boundary_attained = (k == kr.lo || k == kr.hi);
      found = true;
    } else if (val == best.value && (k == kr.lo || k == kr.hi)) {
      best.boundary_attained = true;
    }
  }
  if (!found) throw std::invalid_argument("empty envelope (no finite translate)");
  return best;
}

SiteRange window_policy(int site, double t_macro, int n_scale) {
  if (!(t_macro > 0.0)) throw std::invalid_argument("time must be positive");
  int half = static_cast<int>(std::ceil(n_scale * (t_macro + 2.0)));
  return {site - half, site + half};
}

namespace {

// Shared core of the discrepancy tracking: evolves base and raised heights
// under one event stream and maintains the unique discrepancy site.
struct DiscrepancyState {
  HeightConfig z;
  HeightConfig zt;
  int x;

  static DiscrepancyState make(const OccupancyConfig& init, int x0) {
    init.validate();
    if (!init.window.contains(x0)) throw std::invalid_argument("start site outside window");
    if (init.k.full(init.at(x0)))
      throw std::invalid_argument("second-class particle placed at a full site");
    DiscrepancyState s;
    s.z = height_from_occupancy(init, init.window.lo - 1, 0);
    s.zt = s.z;
    for (int i = x0; i <= s.zt.window.hi; ++i) s.zt.at(i) += 1;
    s.zt.validate();
    s.x = x0;
    return s;
  }

  void apply_epoch(int site) {
    apply_max_rule(z, site);
    apply_max_rule(zt, site);
    std::int64_t d = zt.at(site) - z.at(site);
    if (d != 0 && d != 1) throw std::logic_error("discrepancy lost or duplicated");
    if (site == x - 1 && d == 1) {
      x = site;
    } else if (site == x && d == 0) {
      x = site + 1;
    } else {
      // Away from the particle the indicator pattern must be untouched.
      std::int64_t want = site >= x ? 1 : 0;
      if (d != want) throw std::logic_error("discrepancy moved non-locally");
    }
  }

 private:
  static void apply_max_rule(HeightConfig& h, int site) {
    std::int64_t cand = h.at(site) - 1;
    if (cand < h.at(site - 1)) cand = h.at(site - 1);
    if (h.k.is_finite()) {
      std::int64_t fl = h.at(site + 1) - h.k.value();
      if (cand < fl) cand = fl;
    }
    h.at(site) = cand;
  }
};

void require_single_and_window(const OccupancyConfig& init, const EpochTable& clocks) {
  if (!clocks.is_single())
    throw std::invalid_argument("coupling requires single-particle clocks");
  SiteRange need{clocks.sites().lo, clocks.sites().hi + 1};
  if (!init.window.contains(need))
    throw std::invalid_argument("window does not cover clocked sites + 1");
}

}  // namespace

XPath second_class_discrepancy(const OccupancyConfig& init, int x0, const EpochTable& clocks,
                               double t_end) {
  require_single_and_window(init, clocks);
  DiscrepancyState s = DiscrepancyState::make(init, x0);
  XPath path;
  path.start = x0;
  clocks.for_each_event(t_end, [&](const Event& e) {
    int before = s.x;
    s.apply_epoch(e.site);
    if (s.x != before) path.moves.emplace_back(e.time, s.x);
  });
  return path;
}

namespace {

// Witness test: does some translate k in [k_lo, k_hi] attain value(i)?
// K = infinity contributes only k <= i.
bool has_witness(const HeightConfig& h_now, const HeightConfig& h0, const WedgeFamily& fam,
                 int i, int k_lo, int k_hi, int* out_max_k = nullptr) {
  bool found = false;
  for (int k = k_lo; k <= k_hi; ++k) {
    const WedgeProcess& w = fam.at_k(k);
    int j = i - k;
    if (w.is_inf(j)) continue;
    if (h_now.at(i) == h0.at(k) - w.at(j)) {
      found = true;
      if (out_max_k)
        *out_max_k = std::max(k, *out_max_k);
      else
        return true;
    }
  }
  return found;
}

}  // namespace

Witnessed second_class_variational(const HeightConfig& z_now, const HeightConfig& z0,
                                   const WedgeFamily& family, int x0) {
  SiteRange kr = family.k_range();
  int k_hi = std::min(kr.hi, z0.window.hi);
  Witnessed r{0, false};
  for (int i = z_now.window.lo; i <= z_now.window.hi; ++i) {
    if (has_witness(z_now, z0, family, i, std::max(x0, kr.lo), k_hi)) {
      r.x = i;
      r.window_exhausted = (i == z_now.window.lo);
      return r;
    }
  }
  r.window_exhausted = true;
  r.x = z_now.window.hi + 1;
  return r;
}

Witnessed second_class_variational_dual(const HeightConfig& zt_now, const HeightConfig& zt0,
                                        const WedgeFamily& family, int x0) {
  SiteRange kr = family.k_range();
  int k_lo = std::max(kr.lo, zt0.window.lo);
  Witnessed r{0, false};
  for (int i = zt_now.window.hi - 1; i >= zt_now.window.lo; --i) {
    if (has_witness(zt_now, zt0, family, i, k_lo, std::min(x0 - 1, kr.hi))) {
      r.x = i + 1;
      r.window_exhausted = (i == zt_now.window.hi - 1);
      return r;
    }
  }
  r.window_exhausted = true;
  r.x = zt_now.window.lo;
  return r;
}

std::optional<int> max_witness(const HeightConfig& z_now, const HeightConfig& z0,
                               const WedgeFamily& family, int x0, int x_now) {
  SiteRange kr = family.k_range();
  int best = std::numeric_limits<int>::min();
  if (has_witness(z_now, z0, family, x_now, std::max(x0, kr.lo),
                  std::min(kr.hi, z0.window.hi), &best))
    return best;
  return std::nullopt;
}

CoupledScan coupled_scan(const OccupancyConfig& init, int x0, const EpochTable& clocks,
                         double t_end, const CoupledScanOptions& opt) {
  require_single_and_window(init, clocks);
  DiscrepancyState s = DiscrepancyState::make(init, x0);
  const HeightConfig z0 = s.z;
  const HeightConfig zt0 = s.zt;
  WedgeFamily family(init.k, z0.window, clocks);

  CoupledScan scan;
  scan.discrepancy_path.start = x0;

  std::optional<int> prev_witness;
  auto record = [&](double time) {
    CoupledScan::Sample sm;
    sm.time = time;
    sm.x_discrepancy = s.x;
    Witnessed w = second_class_variational(s.z, z0, family, x0);
    sm.x_formula = w.x;
    scan.any_window_exhausted |= w.window_exhausted;
    if (opt.check_dual) {
      Witnessed d = second_class_variational_dual(s.zt, zt0, family, x0);
      sm.x_dual = d.x;
      scan.any_window_exhausted |= d.window_exhausted;
    } else {
      sm.x_dual = sm.x_formula;
    }
    if (opt.track_witness) {
      sm.witness_max = max_witness(s.z, z0, family, x0, s.x);
      if (sm.witness_max && prev_witness && *sm.witness_max < *prev_witness)
        scan.witness_monotone = false;
      if (sm.witness_max) prev_witness = sm.witness_max;
    }
    if (opt.check_statements) {
      SiteRange kr = family.k_range();
      int k_hi = std::min(kr.hi, z0.window.hi);
      for (int i = s.z.window.lo + 1; i <= s.z.window.hi - 1; ++i) {
        bool wz = has_witness(s.z, z0, family, i, std::max(x0, kr.lo), k_hi);
        bool wzt = has_witness(s.zt, zt0, family, i, kr.lo, std::min(x0 - 1, kr.hi));
        bool ok = (i < s.x) ? (!wz && wzt) : (wz && !wzt);
        if (!ok) scan.statements_hold = false;
      }
    }
    scan.samples.push_back(sm);
  };

  record(0.0);
  clocks.for_each_event(t_end, [&](const Event& e) {
    int before = s.x;
    s.apply_epoch(e.site);
    family.apply_epoch(e.site);
    if (s.x != before) scan.discrepancy_path.moves.emplace_back(e.time, s.x);
    record(e.time);
  });
  return scan;
}

}  // namespace kex
