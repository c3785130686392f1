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

#ifndef KEX_CAPACITY_HPP_
#define KEX_CAPACITY_HPP_

#include <cassert>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace kex {

/// Per-site capacity K: a positive integer or infinite.
class Capacity {
 public:
  static Capacity finite(int k) {
    if (k < 1) throw std::invalid_argument("capacity must be >= 1");
    return Capacity(k);
  }
  static Capacity infinite() { return Capacity(kInfiniteTag); }

  bool is_finite() const { return k_ != kInfiniteTag; }
  int value() const {
    assert(is_finite());
    return k_;
  }

  // Room left above an occupancy; saturates for infinite K.
  int headroom(int occ) const {
    return is_finite() ? k_ - occ : (std::numeric_limits<int>::max() / 2);
  }
  bool admits(int occ) const { return occ >= 0 && (!is_finite() || occ <= k_); }
  bool full(int occ) const { return is_finite() && occ >= k_; }

  std::string str() const { return is_finite() ? std::to_string(k_) : "inf"; }

  friend bool operator==(const Capacity& a, const Capacity& b) { return a.k_ == b.k_; }
  friend bool operator!=(const Capacity& a, const Capacity& b) { return a.k_ != b.k_; }

 private:
  explicit Capacity(int k) : k_(k) {}
  static constexpr int kInfiniteTag = -1;
  int k_;
};

/// Closed integer interval of lattice sites.
struct SiteRange {
  int lo = 0;
  int hi = -1;  // empty by default

  int size() const { return hi >= lo ? hi - lo + 1 : 0; }
  bool empty() const { return hi < lo; }
  bool contains(int i) const { return i >= lo && i <= hi; }
  bool contains(SiteRange r) const { return r.empty() || (contains(r.lo) && contains(r.hi)); }
  SiteRange grown(int by) const { return {lo - by, hi + by}; }
  SiteRange shifted(int by) const { return {lo + by, hi + by}; }

  friend bool operator==(const SiteRange&, const SiteRange&) = default;
};

}  // namespace kex

#endif  // KEX_CAPACITY_HPP_
