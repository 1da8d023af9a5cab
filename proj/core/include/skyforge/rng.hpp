// Copyright 2026 The Skyforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SKYFORGE_RNG_HPP_
#define SKYFORGE_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace skyforge {

// Seeded generator with implementation-independent draws. std::mt19937_64
// output is fully specified by the standard; the distributions are not, so
// the helpers below are written out to keep generated datasets bit-stable
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, n). n must be positive.
  std::uint64_t UniformIndex(std::uint64_t n);
  // Uniform in [lo, hi].
  int UniformInt(int lo, int hi);
  // Uniform in [0, 1).
  double Uniform01();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }
  bool Bernoulli(double p) { return Uniform01() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[UniformIndex(i)]);
    }
  }

  // k distinct indices from [0, n) in draw order.
  std::vector<std::size_t> SampleDistinct(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

std::uint64_t SplitMix64(std::uint64_t x);

// Per-unit seed so that parallel generation is schedule-independent.
std::uint64_t DeriveSeed(std::uint64_t global_seed, std::string_view a,
                         std::string_view b = {});

}  // namespace skyforge

#endif  // SKYFORGE_RNG_HPP_
