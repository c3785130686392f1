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

#ifndef KEX_RNG_HPP_
#define KEX_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace kex {

// SplitMix64 finalizer. Used both as a seed mixer and as a one-shot hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_seed(mix_seed(a, b), c);
}

// Stream seed for the Poisson clock attached to (site, batch size).
inline std::uint64_t stream_seed(std::uint64_t master, int site, int batch) {
  return mix_seed(master, static_cast<std::uint64_t>(static_cast<std::int64_t>(site)),
                  0x6261746368ULL + static_cast<std::uint64_t>(batch));
}

// Seed for an independent replica of a whole experiment.
inline std::uint64_t replica_seed(std::uint64_t master, int replica) {
  return mix_seed(master, 0x7265706c696361ULL, static_cast<std::uint64_t>(replica));
}

/// Deterministic RNG wrapper. The mapping from 64-bit draws to variates is
/// spelled out here so tables regenerate bit-identically from a seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Exponential with the given rate; strictly positive.
  double next_exponential(double rate) {
    double u = next_unit();            // in [0,1)
    double g = -std::log1p(-u) / rate; // log1p(-u) <= 0, never -inf
    return g > 0.0 ? g : next_exponential(rate);
  }

  // Uniform in (a, b), endpoints excluded.
  double next_open(double a, double b) {
    double u = next_unit();
    double v = a + (b - a) * u;
    return (v > a && v < b) ? v : next_open(a, b);
  }

  bool next_bernoulli(double p) { return next_unit() < p; }

  // Geometric on {0,1,2,...} with P(k) = (1-q) q^k, q = rho/(1+rho); mean rho.
  int next_geometric_mean(double rho) {
    if (rho <= 0.0) return 0;
    double q = rho / (1.0 + rho);
    double u = next_unit();
    // Smallest k with 1 - q^{k+1} > u.
    double k = std::floor(std::log1p(-u) / std::log(q));
    return k < 0 ? 0 : static_cast<int>(k);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace kex

#endif  // KEX_RNG_HPP_
