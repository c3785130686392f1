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

#include "kex/hopf_lax.hpp"

#include <cmath>
#include <stdexcept>

namespace kex {

namespace {

constexpr double kGolden = 0.6180339887498949;

}  // namespace

PiecewiseLinear antiderivative(const ProfileSpec& profile) {
  profile.validate(kPlusInfinity);
  std::vector<double> xs, ys;
  xs.push_back(profile.span_lo());
  ys.push_back(profile.integral0(profile.span_lo()));
  for (const auto& p : profile.pieces) {
    xs.push_back(p.b);
    ys.push_back(profile.integral0(p.b));
  }
  return PiecewiseLinear(std::move(xs), std::move(ys), profile.pieces.front().rho,
                         profile.pieces.back().rho)
      .merged_collinear();
}

HopfLaxField::HopfLaxField(PiecewiseLinear u0, ConjugateG g, Capacity k, HopfLaxParams p)
    : u0_(std::move(u0)), g_(std::move(g)), k_(k), p_(p) {
  if (!(p_.dy > 0.0)) throw std::invalid_argument("grid resolution must be positive");
}

HopfLaxField HopfLaxField::from_profile(const ProfileSpec& profile, const FluxFunction& flux,
                                        HopfLaxParams p) {
  return HopfLaxField(antiderivative(profile), kex::conjugate(flux), flux.capacity(), p);
}

// One grid sweep over the admissible window, followed by a golden-section
// polish of the best cell. Keeps node values for level-set queries.
struct HopfLaxField::GridScan {
  double y_lo, y_hi;  // admissible window
  double peak_y;      // polished argmax position
  double peak_val;
  int n_nodes;               // regular nodes; vals has one extra for y_hi
  std::vector<double> vals;  // node values
  double node(int j, double dy) const { return j >= n_nodes ? y_hi : y_lo + j * dy; }
};

HopfLaxField::GridScan HopfLaxField::scan_window(const PiecewiseLinear& base, double x,
                                                 double dt) const {
  GridScan s{};
  s.y_lo = x - dt;
  s.y_hi = k_.is_finite() ? x + dt : x;
  double dy = p_.dy;
  s.n_nodes = static_cast<int>(std::floor((s.y_hi - s.y_lo) / dy)) + 1;
  s.vals.resize(static_cast<std::size_t>(s.n_nodes) + 1);
  auto phi = [&](double y) { return base(y) - dt * g_((x - y) / dt); };
  double best = -kPlusInfinity;
  double best_y = s.y_lo;
  for (int j = 0; j <= s.n_nodes; ++j) {
    double y = s.node(j, dy);
    double v = phi(y);
    s.vals[static_cast<std::size_t>(j)] = v;
    if (v > best) {
      best = v;
      best_y = y;
    }
  }

  // Golden-section polish across the two cells around the best node.
  double a = std::max(s.y_lo, best_y - dy);
  double b = std::min(s.y_hi, best_y + dy);
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = phi(c), fd = phi(d);
  s.peak_y = best_y;
  s.peak_val = best;
  for (int it = 0; it < 60 && (b - a) > 1e-14 * (1.0 + std::fabs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = phi(d);
    }
    if (fc > s.peak_val) {
      s.peak_val = fc;
      s.peak_y = c;
    }
    if (fd > s.peak_val) {
      s.peak_val = fd;
      s.peak_y = d;
    }
  }
  return s;
}

double HopfLaxField::value_from_base(const PiecewiseLinear& base, double x, double dt) const {
  return scan_window(base, x, dt).peak_val;
}

double HopfLaxField::u(double x, double t) const {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (t == 0.0) return u0_(x);
  return value_from_base(u0_, x, t);
}

// Extreme maximizers via the near-maximal level set: the leftmost and
// rightmost points with phi within refine_tol of the polished maximum.
// Locates plateau endpoints (piecewise-linear pathologies) exactly and
// brackets an isolated smooth peak tightly.
Maximizers HopfLaxField::maximizers_from_base(const PiecewiseLinear& base, double x,
                                              double dt) const {
  GridScan s = scan_window(base, x, dt);
  auto phi = [&](double y) { return base(y) - dt * g_((x - y) / dt); };
  double level = s.peak_val - p_.refine_tol * (1.0 + std::fabs(s.peak_val));
  double dy = p_.dy;

  double first_y = s.peak_y, last_y = s.peak_y;
  for (int j = 0; j <= s.n_nodes; ++j)
    if (s.vals[static_cast<std::size_t>(j)] >= level) {
      first_y = std::min(first_y, s.node(j, dy));
      break;
    }
  for (int j = s.n_nodes; j >= 0; --j)
    if (s.vals[static_cast<std::size_t>(j)] >= level) {
      last_y = std::max(last_y, s.node(j, dy));
      break;
    }

  double y_minus;
  if (first_y <= s.y_lo + 1e-15 * (1.0 + std::fabs(s.y_lo))) {
    y_minus = s.y_lo;
  } else {
    double lo = std::max(s.y_lo, first_y - dy), hi = first_y;
    if (phi(lo) >= level) {
      y_minus = lo;  // qualifying region extends into the edge cell
    } else {
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (phi(mid) >= level ? hi : lo) = mid;
      }
      y_minus = hi;
    }
  }
  double y_plus;
  if (last_y >= s.y_hi - 1e-15 * (1.0 + std::fabs(s.y_hi))) {
    y_plus = s.y_hi;
  } else {
    double lo = last_y, hi = std::min(s.y_hi, last_y + dy);
    if (phi(hi) >= level) {
      y_plus = hi;
    } else {
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (phi(mid) >= level ? lo : hi) = mid;
      }
      y_plus = lo;
    }
  }
  return {y_minus, y_plus};
}

Maximizers HopfLaxField::maximizers(double x, double s, double t) const {
  if (!(t > s) || s < 0.0) throw std::invalid_argument("need t > s >= 0");
  if (s == 0.0) return maximizers_from_base(u0_, x, t);
  double dt = t - s;
  double reach = dt + s + 2.0 * p_.dy;
  HopfLaxField slice = restarted(s, x - reach, x + reach);
  return slice.maximizers_from_base(slice.u0_, x, dt);
}

CharPair HopfLaxField::characteristics(double b, double s, double t) const {
  if (!(t > s) || s < 0.0) throw std::invalid_argument("need t > s >= 0");
  double dt = t - s;
  const HopfLaxField* fld = this;
  std::optional<HopfLaxField> slice;
  if (s > 0.0) {
    double reach = 2.0 * dt + s + 2.0 * p_.dy;
    slice.emplace(restarted(s, b - reach, b + reach));
    fld = &*slice;
  }
  auto ypl = [&](double x) { return fld->maximizers_from_base(fld->u0_, x, dt).y_plus; };
  auto ymn = [&](double x) { return fld->maximizers_from_base(fld->u0_, x, dt).y_minus; };

  CharPair out{};
  {
    // x- = inf{ x : y+(x) >= b }; y+ is nondecreasing in x.
    double lo = b - dt, hi = b + dt;
    if (ypl(lo) >= b) {
      out.x_minus = lo;
    } else {
      while (hi - lo > p_.bisect_tol) {
        double mid = 0.5 * (lo + hi);
        (ypl(mid) >= b ? hi : lo) = mid;
      }
      out.x_minus = 0.5 * (lo + hi);
    }
  }
  {
    // x+ = sup{ x : y-(x) <= b }.
    double lo = b - dt, hi = b + dt;
    if (ymn(hi) <= b) {
      out.x_plus = hi;
    } else {
      while (hi - lo > p_.bisect_tol) {
        double mid = 0.5 * (lo + hi);
        (ymn(mid) <= b ? lo : hi) = mid;
      }
      out.x_plus = 0.5 * (lo + hi);
    }
  }
  return out;
}

DensityTriple HopfLaxField::density(double x, double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
  Maximizers m = maximizers(x, 0.0, t);
  DensityTriple d{};
  if (auto gp = g_.derivative((x - m.y_minus) / t)) d.rho_minus = -*gp;
  if (auto gp = g_.derivative((x - m.y_plus) / t)) d.rho_plus = -*gp;
  double h = p_.diff_factor * p_.dy;
  d.rho_numeric = (u(x + h, t) - u(x - h, t)) / (2.0 * h);
  return d;
}

double HopfLaxField::current(double x, double t) const { return u0_(x) - u(x, t); }

HopfLaxField HopfLaxField::restarted(double s, double x_lo, double x_hi) const {
  if (!(s > 0.0)) throw std::invalid_argument("restart time must be positive");
  if (!(x_hi > x_lo)) throw std::invalid_argument("empty restart range");
  double dy = p_.dy;
  int n = static_cast<int>(std::ceil((x_hi - x_lo) / dy)) + 1;

  // Greatest grid maximizers are nondecreasing in x, so the slice fills in
  // O((range + window)/dy * log n) via divide and conquer on the argmax.
  std::vector<double> xs(static_cast<std::size_t>(n)), vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = x_lo + i * dy;

  double y0 = x_lo - s;  // global y-grid anchor
  auto phi = [&](double x, double y) { return u0_(y) - s * g_((x - y) / s); };
  auto win_lo = [&](double x) { return static_cast<int>(std::ceil((x - s - y0) / dy)); };
  auto win_hi = [&](double x) {
    double top = k_.is_finite() ? x + s : x;
    return static_cast<int>(std::floor((top - y0) / dy));
  };

  struct Frame {
    int a, b, jlo, jhi;
  };
  std::vector<Frame> stack;
  stack.push_back({0, n - 1, win_lo(xs.front()), win_hi(xs.back())});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.a > f.b) continue;
    int mid = (f.a + f.b) / 2;
    double x = xs[static_cast<std::size_t>(mid)];
    int jl = std::max(f.jlo, win_lo(x));
    int jh = std::min(f.jhi, win_hi(x));
    // Node maximum drives the monotone argmax pruning; the exact window
    // endpoints only sharpen the recorded value.
    double node_best = -kPlusInfinity;
    int arg = jl;
    bool have_nodes = jl <= jh;
    for (int j = jl; j <= jh; ++j) {
      double v = phi(x, y0 + j * dy);
      if (v >= node_best) {  // greatest maximizer
        node_best = v;
        arg = j;
      }
    }
    double y_end = k_.is_finite() ? x + s : x;
    vals[static_cast<std::size_t>(mid)] =
        std::max({node_best, phi(x, x - s), phi(x, y_end)});
    if (have_nodes) {
      stack.push_back({f.a, mid - 1, f.jlo, arg});
      stack.push_back({mid + 1, f.b, arg, f.jhi});
    } else {
      stack.push_back({f.a, mid - 1, f.jlo, f.jhi});
      stack.push_back({mid + 1, f.b, f.jlo, f.jhi});
    }
  }

  double sl = n > 1 ? (vals[1] - vals[0]) / dy : 0.0;
  double sr = n > 1 ? (vals[static_cast<std::size_t>(n - 1)] - vals[static_cast<std::size_t>(n - 2)]) / dy
                    : 0.0;
  return HopfLaxField(PiecewiseLinear(std::move(xs), std::move(vals), sl, sr), g_, k_, p_);
}

CurrentComparison current_compare(const FluxFunction& flux, const HopfLaxField& field,
                                  const std::vector<std::pair<double, double>>& lambda_at_x,
                                  double x, double t, double tol) {
  if (lambda_at_x.size() < 2) throw std::invalid_argument("candidate tabulation too short");
  double acc = 0.0;
  for (std::size_t i = 1; i < lambda_at_x.size(); ++i) {
    auto [s0, l0] = lambda_at_x[i - 1];
    auto [s1, l1] = lambda_at_x[i];
    if (!(s1 > s0)) throw std::invalid_argument("candidate times not increasing");
    acc += 0.5 * (flux(l0) + flux(l1)) * (s1 - s0);
  }
  CurrentComparison c{};
  c.candidate_current = acc;
  c.chosen_current = field.current(x, t);
  if (std::fabs(acc - c.chosen_current) <= tol)
    c.verdict = CurrentVerdict::equal_within_tol;
  else if (acc < c.chosen_current)
    c.verdict = CurrentVerdict::candidate_below;
  else
    c.verdict = CurrentVerdict::candidate_above;
  return c;
}

}  // namespace kex
