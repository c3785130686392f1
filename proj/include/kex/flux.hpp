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

#ifndef KEX_FLUX_HPP_
#define KEX_FLUX_HPP_

#include <optional>
#include <vector>

#include "kex/capacity.hpp"
#include "kex/clocks.hpp"
#include "kex/piecewise.hpp"

namespace kex {

// Closed-form flux pieces for the infinite-capacity batch process.
double batch_flux_value(const std::vector<BatchRate>& rates, double rho);
double batch_flux_slope(const std::vector<BatchRate>& rates, double rho);
double batch_total_rate(const std::vector<BatchRate>& rates);  // sum beta_h * h

/// Concave flux on [0, K] (or [0, inf) when K is infinite). Closed forms for
/// the K = 1 and K = infinity processes and the batch generalization;
/// piecewise-linear tabulations otherwise, kept exact (never smoothed).
class FluxFunction {
 public:
  enum class Form { k1, k_inf, batch, tabulated };

  static FluxFunction simple_exclusion();  // K = 1: rho (1 - rho)
  static FluxFunction zero_range();        // K = inf: rho / (1 + rho)
  static FluxFunction batch_zero_range(std::vector<BatchRate> rates);
  static FluxFunction tabulated(Capacity k, PiecewiseLinear f);
  // Concave f(rho) = min(rho, 2 - rho): the sharpest corner pathology.
  static FluxFunction corner_k2();

  Form form() const { return form_; }
  Capacity capacity() const { return k_; }
  double rho_max() const;  // end of the representable domain

  double operator()(double rho) const;
  SlopePair one_sided(double rho) const;
  const PiecewiseLinear& table() const;
  const std::vector<BatchRate>& rates() const { return rates_; }

 private:
  FluxFunction(Form f, Capacity k) : form_(f), k_(k) {}
  Form form_;
  Capacity k_;
  std::vector<BatchRate> rates_;
  std::optional<PiecewiseLinear> pwl_;
};

/// Convex nonincreasing conjugate of a concave flux: the wedge growth
/// profile. Zero beyond x = 1; slope -K beyond x = -1 for finite K; +infinity
/// left of 0 for infinite K.
class ConjugateG {
 public:
  enum class Form { k1, k_inf, batch, tabulated };

  static ConjugateG k1();
  static ConjugateG k_inf();
  static ConjugateG batch(std::vector<BatchRate> rates);
  static ConjugateG tabulated(Capacity k, PiecewiseLinear g);

  Form form() const { return form_; }
  Capacity capacity() const { return k_; }
  // Left edge of the finite part of the domain (-inf unless K is infinite).
  double domain_min() const { return k_.is_finite() ? -1e300 : 0.0; }

  double operator()(double x) const;  // +inf encoded as a huge value
  SlopePair one_sided(double x) const;
  // Exact derivative where g is differentiable, nullopt at corners and
  // outside the domain.
  std::optional<double> derivative(double x) const;
  const PiecewiseLinear& table() const;

 private:
  ConjugateG(Form f, Capacity k) : form_(f), k_(k) {}
  double batch_argmax(double x) const;
  Form form_;
  Capacity k_;
  std::vector<BatchRate> rates_;
  std::optional<PiecewiseLinear> pwl_;
};

constexpr double kPlusInfinity = 1e300;

// Legendre transform g(x) = sup_rho { f(rho) - x rho }: exact closed forms
// and exact vertex algebra for tabulated fluxes.
ConjugateG conjugate(const FluxFunction& f);

// Inverse transform f(rho) = inf_x { g(x) + rho x }. Exact vertex algebra for
// tabulated g; numeric minimization sampled onto a tabulation otherwise.
FluxFunction flux_from_g(const ConjugateG& g, Capacity k, int grid_nodes = 4001);

}  // namespace kex

#endif  // KEX_FLUX_HPP_
