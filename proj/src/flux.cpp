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

#include "kex/flux.hpp"

#include <cmath>
#include <stdexcept>

namespace kex {

double batch_flux_value(const std::vector<BatchRate>& rates, double rho) {
  double q = rho / (1.0 + rho);
  double total = 0.0;
  for (const auto& r : rates) {
    double qj = 1.0, s = 0.0;
    for (int j = 1; j <= r.batch; ++j) {
      qj *= q;
      s += qj;
    }
    total += r.rate * s;
  }
  return total;
}

double batch_flux_slope(const std::vector<BatchRate>& rates, double rho) {
  double q = rho / (1.0 + rho);
  double dq = 1.0 / ((1.0 + rho) * (1.0 + rho));
  double total = 0.0;
  for (const auto& r : rates) {
    double qjm1 = 1.0, s = 0.0;
    for (int j = 1; j <= r.batch; ++j) {
      s += j * qjm1;
      qjm1 *= q;
    }
    total += r.rate * s;
  }
  return total * dq;
}

double batch_total_rate(const std::vector<BatchRate>& rates) {
  double s = 0.0;
  for (const auto& r : rates) s += r.rate * r.batch;
  return s;
}

FluxFunction FluxFunction::simple_exclusion() {
  return FluxFunction(Form::k1, Capacity::finite(1));
}

FluxFunction FluxFunction::zero_range() {
  return FluxFunction(Form::k_inf, Capacity::infinite());
}

FluxFunction FluxFunction::batch_zero_range(std::vector<BatchRate> rates) {
  RateSpec::batch(rates).validate(Capacity::infinite());
  FluxFunction f(Form::batch, Capacity::infinite());
  f.rates_ = std::move(rates);
  return f;
}

FluxFunction FluxFunction::tabulated(Capacity k, PiecewiseLinear f) {
  PiecewiseLinear merged = f.merged_collinear();
  const auto& xs = merged.xs();
  const auto& ys = merged.ys();
  if (xs.front() != 0.0 || ys.front() != 0.0)
    throw std::invalid_argument("tabulated flux must start at (0, 0)");
  // Concavity: slopes strictly decreasing after merging.
  for (std::size_t i = 2; i < xs.size(); ++i) {
    double s_prev = (ys[i - 1] - ys[i - 2]) / (xs[i - 1] - xs[i - 2]);
    double s_cur = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
    if (!(s_cur < s_prev)) throw std::invalid_argument("tabulated flux not concave");
  }
  if (k.is_finite() && xs.back() > k.value() + 1e-12)
    throw std::invalid_argument("tabulated flux domain exceeds capacity");
  FluxFunction out(Form::tabulated, k);
  out.pwl_ = std::move(merged);
  return out;
}

FluxFunction FluxFunction::corner_k2() {
  return tabulated(Capacity::finite(2),
                   PiecewiseLinear({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}, 1.0, -1.0));
}

double FluxFunction::rho_max() const {
  switch (form_) {
    case Form::k1: return 1.0;
    case Form::k_inf:
    case Form::batch: return kPlusInfinity;
    case Form::tabulated: return pwl_->xs().back();
  }
  return 0.0;
}

double FluxFunction::operator()(double rho) const {
  if (rho < -1e-12 || rho > rho_max() + 1e-12)
    throw std::out_of_range("density outside the flux domain");
  switch (form_) {
    case Form::k1: return rho * (1.0 - rho);
    case Form::k_inf: return rho / (1.0 + rho);
    case Form::batch: return batch_flux_value(rates_, rho);
    case Form::tabulated: return (*pwl_)(rho);
  }
  return 0.0;
}

SlopePair FluxFunction::one_sided(double rho) const {
  if (rho < -1e-12 || rho > rho_max() + 1e-12)
    throw std::out_of_range("density outside the flux domain");
  switch (form_) {
    case Form::k1: {
      double d = 1.0 - 2.0 * rho;
      SlopePair p{d, d};
      if (rho <= 0.0) p.left.reset();
      if (rho >= 1.0) p.right.reset();
      return p;
    }
    case Form::k_inf:
    case Form::batch: {
      double d = form_ == Form::k_inf ? 1.0 / ((1.0 + rho) * (1.0 + rho))
                                      : batch_flux_slope(rates_, rho);
      SlopePair p{d, d};
      if (rho <= 0.0) p.left.reset();
      return p;
    }
    case Form::tabulated: {
      SlopePair p = pwl_->one_sided(rho);
      if (rho <= pwl_->xs().front()) p.left.reset();
      if (rho >= pwl_->xs().back()) p.right.reset();
      return p;
    }
  }
  return {};
}

const PiecewiseLinear& FluxFunction::table() const {
  if (!pwl_) throw std::logic_error("flux has no tabulation");
  return *pwl_;
}

ConjugateG ConjugateG::k1() { return ConjugateG(Form::k1, Capacity::finite(1)); }
ConjugateG ConjugateG::k_inf() { return ConjugateG(Form::k_inf, Capacity::infinite()); }

ConjugateG ConjugateG::batch(std::vector<BatchRate> rates) {
  ConjugateG g(Form::batch, Capacity::infinite());
  g.rates_ = std::move(rates);
  return g;
}

ConjugateG ConjugateG::tabulated(Capacity k, PiecewiseLinear g) {
  PiecewiseLinear merged = g.merged_collinear();
  const auto& xs = merged.xs();
  const auto& ys = merged.ys();
  for (std::size_t i = 2; i < xs.size(); ++i) {
    double s_prev = (ys[i - 1] - ys[i - 2]) / (xs[i - 1] - xs[i - 2]);
    double s_cur = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
    if (!(s_cur > s_prev)) throw std::invalid_argument("tabulated conjugate not convex");
  }
  ConjugateG out(Form::tabulated, k);
  out.pwl_ = std::move(merged);
  return out;
}

// Maximizer of f(rho) - x rho for the batch flux, x > 0.
double ConjugateG::batch_argmax(double x) const {
  if (x >= batch_flux_slope(rates_, 0.0)) return 0.0;
  double hi = 1.0;
  while (batch_flux_slope(rates_, hi) > x) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
    double mid = 0.5 * (lo + hi);
    (batch_flux_slope(rates_, mid) > x ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ConjugateG::operator()(double x) const {
  switch (form_) {
    case Form::k1: {
      if (x >= 1.0) return 0.0;
      if (x <= -1.0) return -x;
      double h = 0.5 * (1.0 - x);
      return h * h;
    }
    case Form::k_inf: {
      if (x < 0.0) return kPlusInfinity;
      if (x >= 1.0) return 0.0;
      double r = 1.0 - std::sqrt(x);
      return r * r;
    }
    case Form::batch: {
      if (x < 0.0) return kPlusInfinity;
      if (x == 0.0) return batch_total_rate(rates_);
      double r = batch_argmax(x);
      return batch_flux_value(rates_, r) - x * r;
    }
    case Form::tabulated: return (*pwl_)(x);
  }
  return 0.0;
}

SlopePair ConjugateG::one_sided(double x) const {
  switch (form_) {
    case Form::k1: {
      double d = x <= -1.0 ? -1.0 : (x >= 1.0 ? 0.0 : 0.5 * (x - 1.0));
      return {d, d};
    }
    case Form::k_inf: {
      if (x < 0.0) return {std::nullopt, std::nullopt};
      if (x == 0.0) return {std::nullopt, std::nullopt};  // slope diverges
      double d = x >= 1.0 ? 0.0 : 1.0 - 1.0 / std::sqrt(x);
      return {d, d};
    }
    case Form::batch: {
      if (x <= 0.0) return {std::nullopt, std::nullopt};
      double d = -batch_argmax(x);
      return {d, d};
    }
    case Form::tabulated: return pwl_->one_sided(x);
  }
  return {};
}

std::optional<double> ConjugateG::derivative(double x) const {
  SlopePair p = one_sided(x);
  if (!p.left || !p.right) return std::nullopt;
  if (*p.left == *p.right) return *p.left;
  // Closed forms are C1; only tabulations carry corners.
  if (std::fabs(*p.left - *p.right) <= 1e-12 * (1.0 + std::fabs(*p.left)))
    return 0.5 * (*p.left + *p.right);
  return std::nullopt;
}

const PiecewiseLinear& ConjugateG::table() const {
  if (!pwl_) throw std::logic_error("conjugate has no tabulation");
  return *pwl_;
}

ConjugateG conjugate(const FluxFunction& f) {
  switch (f.form()) {
    case FluxFunction::Form::k1: return ConjugateG::k1();
    case FluxFunction::Form::k_inf: return ConjugateG::k_inf();
    case FluxFunction::Form::batch: return ConjugateG::batch(f.rates());
    case FluxFunction::Form::tabulated: break;
  }
  // Exact vertex algebra: the conjugate of a concave piecewise-linear flux
  // has a vertex at each flux slope, with value taken at the matching flux
  // vertex; its slopes are the negated flux vertices.
  const PiecewiseLinear& t = f.table();
  const auto& rho = t.xs();
  const auto& val = t.ys();
  std::size_t m = rho.size() - 1;  // number of segments
  std::vector<double> xs, ys;
  xs.reserve(m);
  ys.reserve(m);
  for (std::size_t j = m; j >= 1; --j) {  // ascending in slope
    double slope = (val[j] - val[j - 1]) / (rho[j] - rho[j - 1]);
    xs.push_back(slope);
    ys.push_back(val[j] - slope * rho[j]);
  }
  double left_ext = -rho.back();  // -K
  double right_ext = -rho.front();
  return ConjugateG::tabulated(f.capacity(),
                               PiecewiseLinear(std::move(xs), std::move(ys), left_ext, right_ext));
}

FluxFunction flux_from_g(const ConjugateG& g, Capacity k, int grid_nodes) {
  if (g.form() == ConjugateG::Form::tabulated) {
    // Dual vertex algebra: one flux vertex per conjugate slope.
    const PiecewiseLinear& t = g.table();
    const auto& xs = t.xs();
    const auto& ys = t.ys();
    std::vector<double> slopes;  // ascending, including extensions
    slopes.push_back(t.left_ext_slope());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      slopes.push_back((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]));
    slopes.push_back(t.right_ext_slope());
    std::vector<double> rho, val;
    // rho = -slope runs ascending as slopes descend.
    for (std::size_t j = slopes.size(); j-- > 0;) {
      double r = -slopes[j];
      std::size_t vtx = j == 0 ? 0 : j - 1;
      // min over x of g + rho x is attained at vertex between slopes j-1, j;
      // for the extreme slopes it sits at the first/last vertex.
      if (j == slopes.size() - 1) vtx = xs.size() - 1;
      val.push_back(ys[vtx] + r * xs[vtx]);
      rho.push_back(r);
    }
    // Deduplicate equal rho (repeated extension slopes).
    std::vector<double> rr, vv;
    for (std::size_t i = 0; i < rho.size(); ++i) {
      if (!rr.empty() && rho[i] <= rr.back() + 1e-15) continue;
      rr.push_back(rho[i]);
      vv.push_back(val[i]);
    }
    double sl = rr.size() > 1 ? (vv[1] - vv[0]) / (rr[1] - rr[0]) : 0.0;
    double sr = rr.size() > 1 ? (vv.back() - vv[vv.size() - 2]) / (rr.back() - rr[rr.size() - 2])
                              : 0.0;
    return FluxFunction::tabulated(k, PiecewiseLinear(std::move(rr), std::move(vv), sl, sr));
  }

  // Closed forms: sample inf_x { g(x) + rho x } on a grid. The infimum over
  // x lives in [-1, 1] ([0, 1] for infinite K) because of the wing slopes.
  double rho_hi = k.is_finite() ? static_cast<double>(k.value()) : 4.0;
  double x_lo = k.is_finite() ? -1.0 : 0.0;
  std::vector<double> rho, val;
  rho.reserve(grid_nodes);
  val.reserve(grid_nodes);
  for (int i = 0; i < grid_nodes; ++i) {
    double r = rho_hi * i / (grid_nodes - 1);
    double lo = x_lo, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      double f1 = g(m1) + r * m1, f2 = g(m2) + r * m2;
      if (f1 < f2)
        hi = m2;
      else
        lo = m1;
    }
    double x = 0.5 * (lo + hi);
    double v = g(x) + r * x;
    v = std::min({v, g(x_lo) + r * x_lo, g(1.0) + r});
    rho.push_back(r);
    val.push_back(v);
  }
  val[0] = 0.0;  // f(0) = 0 exactly for every flux here
  double sl = (val[1] - val[0]) / (rho[1] - rho[0]);
  double sr = (val.back() - val[val.size() - 2]) / (rho.back() - rho[rho.size() - 2]);
  // The sampled infimum of a concave function can pick up grid-level wiggles;
  // keep the tabulation usable by a tiny concavity repair via upper hull.
  std::vector<double> hx, hy;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    while (hx.size() >= 2) {
      double s1 = (hy.back() - hy[hy.size() - 2]) / (hx.back() - hx[hx.size() - 2]);
      double s2 = (val[i] - hy.back()) / (rho[i] - hx.back());
      if (s2 > s1 - 1e-15) {
        hx.pop_back();
        hy.pop_back();
      } else {
        break;
      }
    }
    hx.push_back(rho[i]);
    hy.push_back(val[i]);
  }
  return FluxFunction::tabulated(k, PiecewiseLinear(std::move(hx), std::move(hy), sl, sr));
}

}  // namespace kex
