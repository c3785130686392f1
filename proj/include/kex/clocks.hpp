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

#ifndef KEX_CLOCKS_HPP_
#define KEX_CLOCKS_HPP_

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "kex/capacity.hpp"

namespace kex {

struct BatchRate {
  int batch = 1;      // particles attempted per epoch, >= 1
  double rate = 1.0;  // exponential rate, >= 0
};

/// Jump-rate specification: single-particle rate-1 jumps, or independent
/// batch streams (one Poisson clock per site and batch size).
class RateSpec {
 public:
  static RateSpec single() { return RateSpec({BatchRate{1, 1.0}}, true); }
  static RateSpec batch(std::vector<BatchRate> rates);

  bool is_single() const { return single_; }
  const std::vector<BatchRate>& rates() const { return rates_; }

  // Rejects negative rates, duplicate batch sizes, and beta_h > 0 for h > K.
  void validate(Capacity k) const;

 private:
  RateSpec(std::vector<BatchRate> r, bool s) : rates_(std::move(r)), single_(s) {}
  std::vector<BatchRate> rates_;
  bool single_;
};

struct Event {
  double time;
  int site;
  int batch;
  friend bool operator==(const Event&, const Event&) = default;
};

/// Pre-generated Poisson epoch streams per (site, batch size) on (0, T].
///
/// Tables are immutable after generation and are meant to be shared by every
/// process coupled to the same realization. All epoch values across all
/// streams are pairwise distinct; this is checked at generation and ties are
/// repaired by redrawing the offending epoch uniformly between its stream
/// neighbors (which preserves the conditional law of a Poisson process).
struct ExplicitStream {
  int site;
  int batch;
  std::vector<double> times;
};

class EpochTable {
 public:
  static EpochTable generate(const RateSpec& spec, SiteRange sites, double horizon,
                             std::uint64_t seed);

  // Same law, built as the superposition process: one Poisson clock at the
  // total rate with independent (site, batch) marks. Stored pre-merged, so
  // iteration is a flat scan and epoch ties cannot occur; per-stream access
  // is unavailable. Preferred for large single-pass experiments.
  static EpochTable generate_superposed(const RateSpec& spec, SiteRange sites,
                                        double horizon, std::uint64_t seed);

  // Hand-listed epochs for deterministic scenarios; times must be strictly
  // increasing per stream and globally distinct.
  static EpochTable from_epochs(SiteRange sites, double horizon,
                                const std::vector<ExplicitStream>& streams);

  double horizon() const { return horizon_; }
  SiteRange sites() const { return sites_; }
  const std::vector<int>& batch_sizes() const { return batches_; }
  bool is_single() const { return batches_.size() == 1 && batches_[0] == 1; }

  const std::vector<double>& stream(int site, int batch) const;
  std::size_t total_epochs() const;

  // The restart operator: epochs strictly after tau, shifted to start at 0.
  EpochTable shifted(double tau) const;

  // Visits every epoch with time <= t_max in strictly increasing time order.
  template <class Fn>
  void for_each_event(double t_max, Fn&& fn) const {
    if (!merged_.empty() || streams_.empty()) {
      for (const Event& e : merged_) {
        if (e.time > t_max) break;
        fn(e);
      }
      return;
    }
    struct Head {
      double time;
      std::uint32_t stream;
      std::uint32_t pos;
    };
    auto cmp = [](const Head& a, const Head& b) { return a.time > b.time; };
    std::priority_queue<Head, std::vector<Head>, decltype(cmp)> heap(cmp);
    for (std::size_t s = 0; s < streams_.size(); ++s)
      if (!streams_[s].empty() && streams_[s][0] <= t_max)
        heap.push({streams_[s][0], static_cast<std::uint32_t>(s), 0});

    const std::uint32_t nb = static_cast<std::uint32_t>(batches_.size());
    double prev = -1.0;
    while (!heap.empty()) {
      Head h = heap.top();
      heap.pop();
      if (h.time == prev) throw std::logic_error("epoch tie in generated table");
      prev = h.time;
      int site = sites_.lo + static_cast<int>(h.stream / nb);
      int batch = batches_[h.stream % nb];
      fn(Event{h.time, site, batch});
      const auto& ep = streams_[h.stream];
      if (h.pos + 1 < ep.size() && ep[h.pos + 1] <= t_max)
        heap.push({ep[h.pos + 1], h.stream, h.pos + 1});
    }
  }

  std::vector<Event> merged(double t_max) const {
    std::vector<Event> out;
    for_each_event(t_max, [&](const Event& e) { out.push_back(e); });
    return out;
  }

  friend bool operator==(const EpochTable&, const EpochTable&) = default;

 private:
  EpochTable() = default;
  std::vector<double>& stream_mut(int site, int batch);
  int stream_index(int site, int batch) const;
  void check_disjoint_and_repair(std::uint64_t seed);

  double horizon_ = 0.0;
  SiteRange sites_;
  std::vector<int> batches_;                  // distinct batch sizes, ascending
  std::vector<std::vector<double>> streams_;  // [site_idx * batches + batch_idx]
  std::vector<Event> merged_;                 // superposed representation
};

}  // namespace kex

#endif  // KEX_CLOCKS_HPP_
