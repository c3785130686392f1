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

#include "kex/clocks.hpp"

#include <algorithm>
#include <set>

#include "kex/rng.hpp"

namespace kex {

RateSpec RateSpec::batch(std::vector<BatchRate> rates) {
  std::sort(rates.begin(), rates.end(),
            [](const BatchRate& a, const BatchRate& b) { return a.batch < b.batch; });
  return RateSpec(std::move(rates), false);
}

void RateSpec::validate(Capacity k) const {
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    const auto& r = rates_[i];
    if (r.batch < 1) throw std::invalid_argument("batch size must be >= 1");
    if (r.rate < 0.0) throw std::invalid_argument("negative jump rate");
    if (i > 0 && rates_[i - 1].batch == r.batch)
      throw std::invalid_argument("duplicate batch size in rate spec");
    if (k.is_finite() && r.batch > k.value() && r.rate > 0.0)
      throw std::invalid_argument("positive rate for batch size exceeding capacity");
  }
}

int EpochTable::stream_index(int site, int batch) const {
  if (!sites_.contains(site)) throw std::out_of_range("site outside epoch table");
  auto it = std::find(batches_.begin(), batches_.end(), batch);
  if (it == batches_.end()) throw std::out_of_range("batch size not in epoch table");
  return (site - sites_.lo) * static_cast<int>(batches_.size()) +
         static_cast<int>(it - batches_.begin());
}

const std::vector<double>& EpochTable::stream(int site, int batch) const {
  if (streams_.empty() && !merged_.empty())
    throw std::logic_error("superposed tables have no per-stream access");
  return streams_[stream_index(site, batch)];
}

std::vector<double>& EpochTable::stream_mut(int site, int batch) {
  return streams_[stream_index(site, batch)];
}

std::size_t EpochTable::total_epochs() const {
  if (!merged_.empty()) return merged_.size();
  std::size_t n = 0;
  for (const auto& s : streams_) n += s.size();
  return n;
}

EpochTable EpochTable::generate(const RateSpec& spec, SiteRange sites, double horizon,
                                std::uint64_t seed) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (sites.empty()) throw std::invalid_argument("empty site range");
  for (const auto& r : spec.rates())
    if (r.rate < 0.0) throw std::invalid_argument("negative jump rate");

  EpochTable t;
  t.horizon_ = horizon;
  t.sites_ = sites;
  for (const auto& r : spec.rates()) t.batches_.push_back(r.batch);
  t.streams_.resize(static_cast<std::size_t>(sites.size()) * t.batches_.size());

  for (int site = sites.lo; site <= sites.hi; ++site) {
    for (const auto& r : spec.rates()) {
      auto& epochs = t.stream_mut(site, r.batch);
      if (r.rate <= 0.0) continue;
      Rng rng(stream_seed(seed, site, r.batch));
      double at = 0.0;
      for (;;) {
        at += rng.next_exponential(r.rate);
        if (at > horizon) break;
        epochs.push_back(at);
      }
    }
  }
  t.check_disjoint_and_repair(seed);
  return t;
}

EpochTable EpochTable::generate_superposed(const RateSpec& spec, SiteRange sites,
                                           double horizon, std::uint64_t seed) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (sites.empty()) throw std::invalid_argument("empty site range");
  double per_site = 0.0;
  for (const auto& r : spec.rates()) {
    if (r.rate < 0.0) throw std::invalid_argument("negative jump rate");
    per_site += r.rate;
  }
  EpochTable t;
  t.horizon_ = horizon;
  t.sites_ = sites;
  for (const auto& r : spec.rates()) t.batches_.push_back(r.batch);

  double total = per_site * sites.size();
  if (total <= 0.0) return t;
  Rng rng(mix_seed(seed, 0x73757065ULL));
  t.merged_.reserve(static_cast<std::size_t>(total * horizon * 1.05) + 64);
  double at = 0.0;
  for (;;) {
    at += rng.next_exponential(total);
    if (at > horizon) break;
    int site = sites.lo + static_cast<int>(rng.next_unit() * sites.size());
    if (site > sites.hi) site = sites.hi;
    int batch = spec.rates()[0].batch;
    if (spec.rates().size() > 1) {
      double u = rng.next_unit() * per_site;
      for (const auto& r : spec.rates()) {
        batch = r.batch;
        u -= r.rate;
        if (u <= 0.0) break;
      }
    }
    t.merged_.push_back({at, site, batch});
  }
  return t;
}

EpochTable EpochTable::from_epochs(SiteRange sites, double horizon,
                                   const std::vector<ExplicitStream>& streams) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (sites.empty()) throw std::invalid_argument("empty site range");
  EpochTable t;
  t.horizon_ = horizon;
  t.sites_ = sites;
  for (const auto& s : streams)
    if (std::find(t.batches_.begin(), t.batches_.end(), s.batch) == t.batches_.end())
      t.batches_.push_back(s.batch);
  if (t.batches_.empty()) t.batches_.push_back(1);
  std::sort(t.batches_.begin(), t.batches_.end());
  t.streams_.resize(static_cast<std::size_t>(sites.size()) * t.batches_.size());
  std::set<double> seen;
  for (const auto& s : streams) {
    auto& ep = t.stream_mut(s.site, s.batch);
    for (double v : s.times) {
      if (!(v > 0.0 && v <= horizon)) throw std::invalid_argument("epoch outside (0, T]");
      if (!ep.empty() && v <= ep.back())
        throw std::invalid_argument("epochs not strictly increasing");
      if (!seen.insert(v).second) throw std::invalid_argument("duplicate epoch value");
      ep.push_back(v);
    }
  }
  return t;
}

// One merged pass over all streams. Epochs within a stream are strictly
// increasing by construction; cross-stream ties are repaired by a redraw
// uniform between the offending epoch's neighbors in its own stream.
void EpochTable::check_disjoint_and_repair(std::uint64_t seed) {
  struct Head {
    double time;
    std::size_t stream;
    std::size_t pos;
  };
  Rng tiebreak(mix_seed(seed, 0x7469656272ULL));
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto cmp = [](const Head& a, const Head& b) { return a.time > b.time; };
    std::priority_queue<Head, std::vector<Head>, decltype(cmp)> heap(cmp);
    for (std::size_t s = 0; s < streams_.size(); ++s)
      if (!streams_[s].empty()) heap.push({streams_[s][0], s, 0});

    bool clean = true;
    double prev = -1.0;
    while (!heap.empty()) {
      Head h = heap.top();
      heap.pop();
      if (h.time == prev) {
        clean = false;
        // Redraw inside (left neighbor, right neighbor) of this stream.
        auto& ep = streams_[h.stream];
        double lo = h.pos > 0 ? ep[h.pos - 1] : 0.0;
        double hi = h.pos + 1 < ep.size() ? ep[h.pos + 1] : horizon_;
        ep[h.pos] = tiebreak.next_open(lo, hi);
      }
      prev = h.time;
      if (h.pos + 1 < streams_[h.stream].size())
        heap.push({streams_[h.stream][h.pos + 1], h.stream, h.pos + 1});
    }
    if (clean) return;
  }
  throw std::runtime_error("could not break epoch ties");
}

EpochTable EpochTable::shifted(double tau) const {
  if (tau < 0.0 || tau > horizon_) throw std::invalid_argument("shift outside [0, horizon]");
  EpochTable t;
  t.horizon_ = horizon_ - tau;
  t.sites_ = sites_;
  t.batches_ = batches_;
  t.streams_.resize(streams_.size());
  for (std::size_t s = 0; s < streams_.size(); ++s) {
    for (double e : streams_[s])
      if (e > tau) t.streams_[s].push_back(e - tau);
  }
  for (const Event& e : merged_)
    if (e.time > tau) t.merged_.push_back({e.time - tau, e.site, e.batch});
  return t;
}

}  // namespace kex
