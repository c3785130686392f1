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

#include "kex/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "kex/rng.hpp"

namespace kex {

int buffer_width(double horizon) {
  return static_cast<int>(std::ceil(horizon + 6.0 * std::sqrt(horizon))) + 10;
}

ParallelOutcome run_replicas(int replicas, const RunBudget& budget,
                             const std::function<void(int)>& body) {
  int threads = budget.threads > 0 ? budget.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, replicas);

  auto start = std::chrono::steady_clock::now();
  auto expired = [&]() {
    if (budget.deadline_seconds <= 0.0) return false;
    std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
    return el.count() > budget.deadline_seconds;
  };

  std::atomic<int> next{0};
  std::atomic<int> completed{0};
  std::atomic<bool> truncated{false};
  auto worker = [&]() {
    for (;;) {
      if (expired()) {
        truncated = true;
        return;
      }
      int r = next.fetch_add(1);
      if (r >= replicas) return;
      body(r);
      completed.fetch_add(1);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return {completed.load(), truncated.load()};
}

// ---------------------------------------------------------------------------

GEstimate estimate_g(const GEstimateConfig& cfg) {
  if (cfg.xs.empty()) throw std::invalid_argument("no evaluation points");
  double horizon = cfg.n * cfg.t;
  int w = buffer_width(horizon);
  int lo_site = 0, hi_site = 0;
  for (double x : cfg.xs) {
    int site = static_cast<int>(std::floor(cfg.n * x));
    lo_site = std::min(lo_site, site);
    hi_site = std::max(hi_site, site);
  }
  SiteRange clocked{lo_site - w, hi_site + w};

  GEstimate out;
  out.args.reserve(cfg.xs.size());
  for (double x : cfg.xs) out.args.push_back(x / cfg.t);
  out.raw.assign(cfg.xs.size(), {});
  for (auto& r : out.raw) r.values.assign(static_cast<std::size_t>(cfg.replicas), 0.0);

  ParallelOutcome oc = run_replicas(cfg.replicas, cfg.budget, [&](int rep) {
    EpochTable clocks = EpochTable::generate_superposed(RateSpec::single(), clocked,
                                                        horizon, replica_seed(cfg.seed, rep));
    WedgeProcess wp = evolve_wedge(cfg.k, 0, clocks, horizon);
    for (std::size_t i = 0; i < cfg.xs.size(); ++i) {
      int site = static_cast<int>(std::floor(cfg.n * cfg.xs[i]));
      out.raw[i].values[static_cast<std::size_t>(rep)] =
          static_cast<double>(wp.at(site)) / (static_cast<double>(cfg.n) * cfg.t);
    }
  });
  out.truncated = oc.truncated;
  out.replicas_done = oc.completed;
  if (oc.truncated)
    for (auto& r : out.raw) r.values.resize(static_cast<std::size_t>(oc.completed));

  std::vector<double> means;
  means.reserve(out.raw.size());
  for (const auto& r : out.raw) means.push_back(r.mean());
  out.projected = project_convex_nonincreasing(out.args, means);
  for (std::size_t i = 0; i < means.size(); ++i)
    out.max_projection_shift =
        std::max(out.max_projection_shift, std::fabs(means[i] - out.projected[i]));
  return out;
}

std::vector<double> project_convex_nonincreasing(const std::vector<double>& xs,
                                                 const std::vector<double>& ys) {
  // Lower convex hull, then clamp trailing positive slopes flat.
  std::size_t n = xs.size();
  if (n < 3) return ys;
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull.back();
      double s1 = (ys[b] - ys[a]) / (xs[b] - xs[a]);
      double s2 = (ys[i] - ys[b]) / (xs[i] - xs[b]);
      if (s2 <= s1)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::vector<double> out(n);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    std::size_t a = hull[h], b = hull[h + 1];
    double s = (ys[b] - ys[a]) / (xs[b] - xs[a]);
    for (std::size_t i = a; i <= b; ++i) out[i] = ys[a] + s * (xs[i] - xs[a]);
  }
  // Flatten any increasing tail (g is nonincreasing).
  for (std::size_t i = 1; i < n; ++i) out[i] = std::min(out[i], out[i - 1]);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

ProfileSpec constant_profile_for(double rho, double span) {
  return ProfileSpec::constant(rho, -span, span);
}

}  // namespace

FluxEstimate estimate_flux_current(const FluxCurrentConfig& cfg) {
  cfg.rates.validate(cfg.k);
  if (cfg.rho < 0.0 || (cfg.k.is_finite() && cfg.rho > cfg.k.value()))
    throw std::invalid_argument("density out of range");
  switch (cfg.family) {
    case InitFamily::bernoulli:
      if (!cfg.k.is_finite() || cfg.k.value() != 1)
        throw std::invalid_argument("bernoulli requires K = 1");
      break;
    case InitFamily::geometric:
      if (cfg.k.is_finite()) throw std::invalid_argument("geometric requires K = infinity");
      break;
    case InitFamily::deterministic_rounding:
      break;
  }

  int half = cfg.sites / 2;
  SiteRange clocked{-half, half};
  SiteRange window{clocked.lo, clocked.hi + 1};
  int band = cfg.band > 0 ? cfg.band : std::max(16, cfg.sites / 100);
  SiteRange band_sites{-band / 2, band / 2};
  double t_half = cfg.horizon / 2.0;

  FluxEstimate out;
  out.rho = cfg.rho;
  out.stats.values.assign(static_cast<std::size_t>(cfg.replicas), 0.0);
  if (cfg.family == InitFamily::deterministic_rounding && cfg.k.is_finite() &&
      cfg.k.value() >= 2)
    out.caveat =
        "no invariant single-site law is known for this capacity; started from "
        "deterministic rounding, current averaged over the second half horizon";

  ParallelOutcome oc = run_replicas(cfg.replicas, cfg.budget, [&](int rep) {
    std::uint64_t rs = replica_seed(cfg.seed, rep);
    double scale = static_cast<double>(std::max(1, cfg.sites));
    ProfileSpec prof = constant_profile_for(cfg.rho, 1.0);
    OccupancyConfig init =
        sample_initial(prof, static_cast<int>(scale), cfg.family, cfg.k, window,
                       mix_seed(rs, 0x696e6974ULL));
    EpochTable clocks = EpochTable::generate_superposed(cfg.rates, clocked, cfg.horizon, rs);
    long long crossings = 0;
    sweep_occupancy(init, clocks, cfg.horizon, [&](double time, int site, int moved) {
      if (time > t_half && band_sites.contains(site)) crossings += moved;
    });
    double bonds = static_cast<double>(band_sites.size());
    out.stats.values[static_cast<std::size_t>(rep)] =
        static_cast<double>(crossings) / (bonds * t_half);
  });
  out.truncated = oc.truncated;
  if (oc.truncated) out.stats.values.resize(static_cast<std::size_t>(oc.completed));
  return out;
}

// ---------------------------------------------------------------------------

HydroReport hydrodynamic_profile(const HydroConfig& cfg, const FluxFunction& flux) {
  if (cfg.intervals.empty()) throw std::invalid_argument("no intervals");
  double horizon = cfg.n * cfg.t;
  int w = buffer_width(horizon);
  double roi_lo = cfg.profile.span_lo(), roi_hi = cfg.profile.span_hi();
  for (auto [a, b] : cfg.intervals) {
    roi_lo = std::min(roi_lo, a);
    roi_hi = std::max(roi_hi, b);
  }
  SiteRange clocked{static_cast<int>(std::floor(cfg.n * roi_lo)) - w,
                    static_cast<int>(std::ceil(cfg.n * roi_hi)) + w};
  SiteRange window{clocked.lo, clocked.hi + 1};

  HopfLaxParams params;
  params.dy = cfg.dy;
  HopfLaxField field = HopfLaxField::from_profile(cfg.profile, flux, params);

  HydroReport rep;
  rep.intervals.reserve(cfg.intervals.size());
  for (auto [a, b] : cfg.intervals) {
    HydroIntervalResult r;
    r.a = a;
    r.b = b;
    r.predicted = field.u(b, cfg.t) - field.u(a, cfg.t);
    r.empirical.values.assign(static_cast<std::size_t>(cfg.replicas), 0.0);
    rep.intervals.push_back(std::move(r));
  }

  ParallelOutcome oc = run_replicas(cfg.replicas, cfg.budget, [&](int r) {
    std::uint64_t rs = replica_seed(cfg.seed, r);
    OccupancyConfig init =
        sample_initial(cfg.profile, cfg.n, cfg.family, cfg.k, window, mix_seed(rs, 0x69ULL));
    EpochTable clocks =
        EpochTable::generate_superposed(RateSpec::single(), clocked, horizon, rs);
    auto traj = evolve_occupancy(std::move(init), clocks, horizon);
    const OccupancyConfig& fin = traj.final_state();
    for (std::size_t j = 0; j < cfg.intervals.size(); ++j) {
      auto [a, b] = cfg.intervals[j];
      SiteRange span{static_cast<int>(std::floor(cfg.n * a)) + 1,
                     static_cast<int>(std::floor(cfg.n * b))};
      rep.intervals[j].empirical.values[static_cast<std::size_t>(r)] =
          static_cast<double>(fin.sum(span)) / static_cast<double>(cfg.n);
    }
  });
  rep.truncated = oc.truncated;
  for (auto& r : rep.intervals) {
    if (oc.truncated) r.empirical.values.resize(static_cast<std::size_t>(oc.completed));
    r.error = std::fabs(r.empirical.mean() - r.predicted);
    rep.max_error = std::max(rep.max_error, r.error);
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Shared micro-simulation for the second-class experiments: sample, vacate
// the start site, track the particle to the requested times.
struct TrackedReplica {
  double x_at_s;
  double x_at_t;
};

TrackedReplica run_tracked(const SecondClassConfig& cfg, std::uint64_t rs) {
  double horizon = cfg.n * cfg.t;
  int w = buffer_width(horizon);
  int start = static_cast<int>(std::floor(cfg.n * cfg.b));
  double span_lo = std::min(cfg.profile.span_lo(), cfg.b);
  double span_hi = std::max(cfg.profile.span_hi(), cfg.b);
  SiteRange clocked{static_cast<int>(std::floor(cfg.n * span_lo)) - w,
                    static_cast<int>(std::ceil(cfg.n * span_hi)) + w};
  SiteRange window{clocked.lo, clocked.hi + 1};

  OccupancyConfig init =
      sample_initial(cfg.profile, cfg.n, cfg.family, cfg.k, window, mix_seed(rs, 0x69ULL));
  // The tracked particle needs room at its start site.
  if (cfg.k.full(init.at(start))) init.at(start) = cfg.k.value() - 1;

  EpochTable clocks =
      EpochTable::generate_superposed(RateSpec::single(), clocked, horizon, rs);
  SecondClassRun run = second_class_direct(std::move(init), start, clocks, horizon);
  TrackedReplica out{};
  out.x_at_t = static_cast<double>(run.x.last()) / cfg.n;
  out.x_at_s = cfg.s > 0.0 ? static_cast<double>(run.x.at(cfg.n * cfg.s)) / cfg.n : cfg.b;
  return out;
}

}  // namespace

SecondClassReport second_class_lln(const SecondClassConfig& cfg, const FluxFunction& flux,
                                   double delta) {
  HopfLaxParams params;
  params.dy = cfg.dy;
  HopfLaxField field = HopfLaxField::from_profile(cfg.profile, flux, params);
  CharPair ch = field.characteristics(cfg.b, 0.0, cfg.t);

  SecondClassReport rep;
  rep.delta = delta;
  rep.x_minus = ch.x_minus;
  rep.x_plus = ch.x_plus;
  rep.endpoint.assign(static_cast<std::size_t>(cfg.replicas), 0.0);

  ParallelOutcome oc = run_replicas(cfg.replicas, cfg.budget, [&](int r) {
    rep.endpoint[static_cast<std::size_t>(r)] = run_tracked(cfg, replica_seed(cfg.seed, r)).x_at_t;
  });
  rep.truncated = oc.truncated;
  if (oc.truncated) rep.endpoint.resize(static_cast<std::size_t>(oc.completed));

  int inside = 0;
  for (double v : rep.endpoint)
    if (v >= ch.x_minus - delta && v <= ch.x_plus + delta) ++inside;
  rep.inside_fraction =
      rep.endpoint.empty() ? 0.0 : static_cast<double>(inside) / rep.endpoint.size();
  return rep;
}

RestartReport restart_lln(const SecondClassConfig& cfg, const FluxFunction& flux,
                          double tolerance) {
  if (!(cfg.s > 0.0 && cfg.s < cfg.t)) throw std::invalid_argument("need 0 < s < t");
  HopfLaxParams params;
  params.dy = cfg.dy;
  HopfLaxField field = HopfLaxField::from_profile(cfg.profile, flux, params);
  // One slice serves every replica: characteristics from time s are unique.
  double reach = 2.0 * (cfg.t - cfg.s) + cfg.s + std::fabs(cfg.b) + 2.0;
  HopfLaxField slice = field.restarted(cfg.s, cfg.b - reach, cfg.b + reach);

  std::vector<TrackedReplica> tracked(static_cast<std::size_t>(cfg.replicas));
  ParallelOutcome oc = run_replicas(cfg.replicas, cfg.budget, [&](int r) {
    tracked[static_cast<std::size_t>(r)] = run_tracked(cfg, replica_seed(cfg.seed, r));
  });

  RestartReport rep;
  rep.tolerance = tolerance;
  rep.truncated = oc.truncated;
  int m = oc.truncated ? oc.completed : cfg.replicas;
  int within = 0;
  for (int r = 0; r < m; ++r) {
    const TrackedReplica& tr = tracked[static_cast<std::size_t>(r)];
    CharPair ch = slice.characteristics(tr.x_at_s, 0.0, cfg.t - cfg.s);
    double target = 0.5 * (ch.x_minus + ch.x_plus);
    double err = std::fabs(tr.x_at_t - target);
    rep.errors.push_back(err);
    if (err < tolerance) ++within;
  }
  rep.fraction_within = m > 0 ? static_cast<double>(within) / m : 0.0;
  return rep;
}

FanReport rarefaction_fan(double rho_left, double rho_right, int n, double t, int replicas,
                          std::uint64_t seed, double endpoint_slack, const RunBudget& budget) {
  if (!(rho_left > rho_right)) throw std::invalid_argument("need a decreasing jump");
  SecondClassConfig cfg;
  cfg.k = Capacity::finite(1);
  double extent = 0.8 * t + 0.2;
  cfg.profile = ProfileSpec::riemann(rho_left, rho_right, extent);
  cfg.family = InitFamily::bernoulli;
  cfg.b = 0.0;
  cfg.n = n;
  cfg.t = t;
  cfg.replicas = replicas;
  cfg.seed = seed;
  cfg.budget = budget;

  FanReport rep;
  rep.lo = (1.0 - 2.0 * rho_left) * t;
  rep.hi = (1.0 - 2.0 * rho_right) * t;
  rep.endpoint_slack = endpoint_slack;
  rep.samples.assign(static_cast<std::size_t>(replicas), 0.0);
  ParallelOutcome oc = run_replicas(replicas, budget, [&](int r) {
    rep.samples[static_cast<std::size_t>(r)] = run_tracked(cfg, replica_seed(seed, r)).x_at_t;
  });
  rep.truncated = oc.truncated;
  if (oc.truncated) rep.samples.resize(static_cast<std::size_t>(oc.completed));

  rep.ks_distance = ks_distance_uniform(rep.samples, rep.lo, rep.hi);
  for (double v : rep.samples)
    if (v < rep.lo - endpoint_slack || v > rep.hi + endpoint_slack) rep.endpoints_ok = false;
  return rep;
}

double ks_distance_uniform(std::vector<double> samples, double a, double b) {
  if (samples.empty() || !(b > a)) return 1.0;
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double cdf = std::clamp((samples[i] - a) / (b - a), 0.0, 1.0);
    d = std::max(d, std::fabs(cdf - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - cdf));
  }
  return d;
}

BatchFluxReport batch_flux_check(const std::vector<BatchRate>& rates, double rho, int sites,
                                 double horizon, int replicas, std::uint64_t seed,
                                 const RunBudget& budget) {
  FluxCurrentConfig cfg;
  cfg.k = Capacity::infinite();
  cfg.rates = RateSpec::batch(rates);
  cfg.family = InitFamily::geometric;
  cfg.rho = rho;
  cfg.sites = sites;
  cfg.horizon = horizon;
  cfg.replicas = replicas;
  cfg.seed = seed;
  cfg.budget = budget;
  FluxEstimate est = estimate_flux_current(cfg);

  BatchFluxReport rep;
  rep.measured_mean = est.stats.mean();
  rep.measured_stderr = est.stats.stderror();
  rep.predicted = batch_flux_value(rates, rho);
  rep.truncated = est.truncated;
  return rep;
}

}  // namespace kex
