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

#ifndef KEX_PIECEWISE_HPP_
#define KEX_PIECEWISE_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kex {

struct SlopePair {
  std::optional<double> left;
  std::optional<double> right;
};

/// Continuous piecewise-linear function on all of R: vertices plus linear
/// extensions beyond the first and last vertex. Slope queries are exact
/// vertex algebra, never finite differences.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys, double left_ext_slope,
                  double right_ext_slope)
      : xs_(std::move(xs)), ys_(std::move(ys)), sl_(left_ext_slope), sr_(right_ext_slope) {
    if (xs_.empty() || xs_.size() != ys_.size())
      throw std::invalid_argument("bad piecewise-linear data");
    for (std::size_t i = 1; i < xs_.size(); ++i)
      if (!(xs_[i] > xs_[i - 1])) throw std::invalid_argument("vertices not increasing");
  }

  double operator()(double x) const {
    if (x <= xs_.front()) return ys_.front() + sl_ * (x - xs_.front());
    if (x >= xs_.back()) return ys_.back() + sr_ * (x - xs_.back());
    std::size_t i = upper_vertex(x);
    double s = segment_slope(i - 1);
    return ys_[i - 1] + s * (x - xs_[i - 1]);
  }

  // Exact left/right slopes; equal inside a segment, distinct at corners.
  SlopePair one_sided(double x) const {
    double left, right;
    if (x <= xs_.front())
      left = sl_;
    else if (x > xs_.back())
      left = sr_;
    else
      left = segment_slope(upper_vertex(x) - 1);
    if (x >= xs_.back())
      right = sr_;
    else if (x < xs_.front())
      right = sl_;
    else
      right = segment_slope(lower_segment(x));
    return {left, right};
  }

  double lipschitz() const {
    double m = std::max(std::fabs(sl_), std::fabs(sr_));
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
      m = std::max(m, std::fabs(segment_slope(i)));
    return m;
  }

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  double left_ext_slope() const { return sl_; }
  double right_ext_slope() const { return sr_; }

  // Drops interior vertices whose adjacent slopes agree to within tol.
  PiecewiseLinear merged_collinear(double tol = 1e-12) const {
    if (xs_.size() < 3) return *this;
    std::vector<double> xs{xs_.front()}, ys{ys_.front()};
    for (std::size_t i = 1; i + 1 < xs_.size(); ++i) {
      double s_in = segment_slope(i - 1);
      double s_out = segment_slope(i);
      if (std::fabs(s_in - s_out) > tol) {
        xs.push_back(xs_[i]);
        ys.push_back(ys_[i]);
      }
    }
    xs.push_back(xs_.back());
    ys.push_back(ys_.back());
    return PiecewiseLinear(std::move(xs), std::move(ys), sl_, sr_);
  }

 private:
  // Index of the first vertex with xs_[i] >= x is not what we want; we use:
  // upper_vertex: first index with xs_[i] >= x given x > xs_.front(), so the
  // segment (i-1, i) contains x from the left.
  std::size_t upper_vertex(double x) const {
    auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    return static_cast<std::size_t>(it - xs_.begin());
  }
  // Segment index whose interior or left endpoint holds x, given x < back().
  std::size_t lower_segment(double x) const {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    return i == 0 ? 0 : i - 1;
  }
  double segment_slope(std::size_t i) const {
    return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
  }

  std::vector<double> xs_, ys_;
  double sl_, sr_;
};

}  // namespace kex

#endif  // KEX_PIECEWISE_HPP_
