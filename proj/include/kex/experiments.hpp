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

#ifndef KEX_EXPERIMENTS_HPP_
#define KEX_EXPERIMENTS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kex/coupling.hpp"
#include "kex/dynamics.hpp"
#include "kex/hopf_lax.hpp"
#include "kex/report.hpp"

namespace kex {

// Frozen-buffer width for a microscopic horizon: disturbances cross at most
// one site per epoch, so edge effects stay this far from the region of
// interest up to a Poisson tail.
int buffer_width(double horizon);

// Replicas run in parallel; results land in replica order so aggregation is
// deterministic regardless of scheduling. A positive deadline (seconds) stops
// dispatching new replicas and marks the result truncated.
struct RunBudget {
  double deadline_seconds = 0.0;
  int threads = 0;  // 0 = hardware default
};

struct ParallelOutcome {
  int completed = 0;
  bool truncated = false;
};
ParallelOutcome run_replicas(int replicas, const RunBudget& budget,
                             const std::function<void(int)>& body);

// ---------------------------------------------------------------------------
// Wedge-growth estimation of the conjugate g.
struct GEstimateConfig {
  Capacity k = Capacity::finite(1);
  std::vector<double> xs;  // macroscopic positions; estimates g(x/t)
  int n = 1000;
  double t = 1.0;
  int replicas = 20;
  std::uint64_t seed = 1;
  RunBudget budget;
};

struct GEstimate {
  std::vector<double> args;            // x/t per entry
  std::vector<ReplicaStats> raw;       // per-argument estimates across replicas
  std::vector<double> projected;       // convex nonincreasing projection
  double max_projection_shift = 0.0;
  bool truncated = false;
  int replicas_done = 0;
};

GEstimate estimate_g(const GEstimateConfig& cfg);

// Convex nonincreasing projection used above (lower hull + flat tail).
std::vector<double> project_convex_nonincreasing(const std::vector<double>& xs,
                                                 const std::vector<double>& ys);

// ---------------------------------------------------------------------------
// Current-based flux estimation from near-stationary initial data.
struct FluxCurrentConfig {
  Capacity k = Capacity::finite(1);
  RateSpec rates = RateSpec::single();
  InitFamily family = InitFamily::bernoulli;
  double rho = 0.5;
  int sites = 10000;     // active window width
  double horizon = 1000; // measurement uses (horizon/2, horizon]
  int band = 0;          // central bonds counted; 0 = auto
  int replicas = 10;
  std::uint64_t seed = 1;
  RunBudget budget;
};

struct FluxEstimate {
  double rho = 0.0;
  ReplicaStats stats;
  bool truncated = false;
  std::string caveat;  // set when the initial family is not invariant
};

FluxEstimate estimate_flux_current(const FluxCurrentConfig& cfg);

// ---------------------------------------------------------------------------
// Hydrodynamic profile against the variational solution.
struct HydroConfig {
  Capacity k = Capacity::finite(1);
  ProfileSpec profile;
  InitFamily family = InitFamily::deterministic_rounding;
  int n = 1000;
  double t = 1.0;
  std::vector<std::pair<double, double>> intervals;
  int replicas = 1;
  std::uint64_t seed = 1;
  double dy = 1e-3;  // field resolution
  RunBudget budget;
};

struct HydroIntervalResult {
  double a, b;
  ReplicaStats empirical;  // n^{-1} sum of occupancies over (na, nb]
  double predicted;        // u(b, t) - u(a, t)
  double error;            // |mean - predicted|
};

struct HydroReport {
  std::vector<HydroIntervalResult> intervals;
  double max_error = 0.0;
  bool truncated = false;
};

HydroReport hydrodynamic_profile(const HydroConfig& cfg, const FluxFunction& flux);

// ---------------------------------------------------------------------------
// Second-class particle laws of large numbers.
struct SecondClassConfig {
  Capacity k = Capacity::finite(1);
  ProfileSpec profile;
  InitFamily family = InitFamily::bernoulli;
  double b = 0.0;  // macroscopic start; the particle starts at site floor(n b)
  int n = 2000;
  double t = 1.0;
  double s = 0.0;  // intermediate observation time for restarted tracking
  int replicas = 100;
  std::uint64_t seed = 1;
  double dy = 1e-3;
  RunBudget budget;
};

struct SecondClassReport {
  std::vector<double> endpoint;        // X_n(nt)/n per replica
  double x_minus = 0.0, x_plus = 0.0;  // characteristics from (b, 0)
  double inside_fraction = 0.0;        // within [x- - delta, x+ + delta]
  double delta = 0.05;
  bool truncated = false;
};

SecondClassReport second_class_lln(const SecondClassConfig& cfg, const FluxFunction& flux,
                                   double delta);

// Restart tracking errors |X_n(nt)/n - x(X_n(ns)/n; s, t)| per replica.
struct RestartReport {
  std::vector<double> errors;
  double fraction_within = 0.0;
  double tolerance = 0.07;
  bool truncated = false;
};

RestartReport restart_lln(const SecondClassConfig& cfg, const FluxFunction& flux,
                          double tolerance);

// Rarefaction fan: empirical law of X_n(nt)/n against the uniform law on the
// fan, plus endpoint containment.
struct FanReport {
  std::vector<double> samples;
  double ks_distance = 0.0;
  double lo = 0.0, hi = 0.0;  // fan endpoints
  bool endpoints_ok = true;
  double endpoint_slack = 0.05;
  bool truncated = false;
};

FanReport rarefaction_fan(double rho_left, double rho_right, int n, double t, int replicas,
                          std::uint64_t seed, double endpoint_slack = 0.05,
                          const RunBudget& budget = {});

// ---------------------------------------------------------------------------
// Batch-jump flux against the closed-form series.
struct BatchFluxReport {
  double measured_mean = 0.0;
  double measured_stderr = 0.0;
  double predicted = 0.0;
  bool truncated = false;
};

BatchFluxReport batch_flux_check(const std::vector<BatchRate>& rates, double rho, int sites,
                                 double horizon, int replicas, std::uint64_t seed,
                                 const RunBudget& budget = {});

// Kolmogorov-Smirnov distance between samples and the uniform law on [a, b].
double ks_distance_uniform(std::vector<double> samples, double a, double b);

}  // namespace kex

#endif  // KEX_EXPERIMENTS_HPP_
