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

#ifndef KEX_HOPF_LAX_HPP_
#define KEX_HOPF_LAX_HPP_

#include <optional>
#include <vector>

#include "kex/flux.hpp"
#include "kex/lattice.hpp"
#include "kex/piecewise.hpp"

namespace kex {

struct HopfLaxParams {
  double dy = 1e-4;          // grid resolution of the maximization
  double eps_factor = 10.0;  // argmax candidate tolerance = eps_factor * dy * Lip(u0)
  double refine_tol = 1e-9;  // level used when bisecting plateau edges
  double bisect_tol = 1e-6;  // characteristic bisection tolerance in x
  double diff_factor = 10.0; // central-difference step = diff_factor * dy
};

struct Maximizers {
  double y_minus;
  double y_plus;
};

struct CharPair {
  double x_minus;
  double x_plus;
};

struct DensityTriple {
  std::optional<double> rho_minus;  // -g'((x - y-)/t) where g is smooth there
  std::optional<double> rho_plus;
  double rho_numeric;               // central difference of u
};

/// Evaluator for u(x,t) = sup_y { u0(y) - t g((x-y)/t) }, its extreme
/// maximizers, forward characteristics, and densities. The search is a grid
/// scan over the admissible window [x-t, x+t] ([x-t, x] for infinite K) with
/// local refinement; extreme maximizers are located by bisecting the edges of
/// the near-maximal level set, which finds plateau endpoints exactly where a
/// plain local search could not.
class HopfLaxField {
 public:
  HopfLaxField(PiecewiseLinear u0, ConjugateG g, Capacity k, HopfLaxParams p = {});
  static HopfLaxField from_profile(const ProfileSpec& profile, const FluxFunction& flux,
                                   HopfLaxParams p = {});

  const PiecewiseLinear& initial() const { return u0_; }
  const ConjugateG& conjugate() const { return g_; }
  Capacity capacity() const { return k_; }
  const HopfLaxParams& params() const { return p_; }

  double u0(double x) const { return u0_(x); }
  double u(double x, double t) const;

  // Least and greatest maximizers of the variational problem from time s to
  // t. s > 0 evaluates the time-s slice through the semigroup.
  Maximizers maximizers(double x, double s, double t) const;

  // Minimal and maximal forward characteristics through (b, s).
  CharPair characteristics(double b, double s, double t) const;

  DensityTriple density(double x, double t) const;

  // Time-integrated current through position x on [0, t]: u0(x) - u(x, t).
  double current(double x, double t) const;

  // Field whose initial condition is the time-s slice u(., s) sampled on a dy
  // grid over [x_lo, x_hi]; queries from time s become queries from time 0.
  HopfLaxField restarted(double s, double x_lo, double x_hi) const;

 private:
  struct GridScan;
  GridScan scan_window(const PiecewiseLinear& base, double x, double dt) const;
  Maximizers maximizers_from_base(const PiecewiseLinear& base, double x, double dt) const;
  double value_from_base(const PiecewiseLinear& base, double x, double dt) const;

  PiecewiseLinear u0_;
  ConjugateG g_;
  Capacity k_;
  HopfLaxParams p_;
};

enum class CurrentVerdict { equal_within_tol, candidate_below, candidate_above };

struct CurrentComparison {
  double candidate_current;  // trapezoid of f(lambda(x, .))
  double chosen_current;     // u0(x) - u(x, t), exact for the chosen solution
  CurrentVerdict verdict;
};

// Maximal-current comparator: time-integrated current of a tabulated candidate
// weak solution at fixed x against the variational solution's current.
CurrentComparison current_compare(const FluxFunction& flux, const HopfLaxField& field,
                                  const std::vector<std::pair<double, double>>& lambda_at_x,
                                  double x, double t, double tol);

// u0 built from a density profile via its running integral (edge-clamped).
PiecewiseLinear antiderivative(const ProfileSpec& profile);

}  // namespace kex

#endif  // KEX_HOPF_LAX_HPP_
