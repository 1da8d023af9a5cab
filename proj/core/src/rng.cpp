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

#include "skyforge/rng.hpp"

#include <stdexcept>
#include <unordered_set>

#include "skyforge/error.hpp"

namespace skyforge {

std::uint64_t Rng::UniformIndex(std::uint64_t n) {
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "UniformIndex(0)");
  // Rejection sampling on the largest multiple of n.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % n;
}

int Rng::UniformInt(int lo, int hi) {
  if (hi < lo) Fail(ErrorCode::kInvalidArgument, "UniformInt: hi < lo");
  const auto span = static_cast<std::uint64_t>(std::int64_t{hi} - lo + 1);
  return static_cast<int>(lo + static_cast<std::int64_t>(UniformIndex(span)));
}

double Rng::Uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> Rng::SampleDistinct(std::size_t n, std::size_t k) {
  if (k > n) Fail(ErrorCode::kInvalidArgument, "SampleDistinct: k > n");
  std::vector<std::size_t> out;
  out.reserve(k);
  if (k * 4 >= n) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + UniformIndex(n - i);
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
    return out;
  }
  std::unordered_set<std::size_t> seen;
  while (out.size() < k) {
    const std::size_t i = UniformIndex(n);
    if (seen.insert(i).second) out.push_back(i);
  }
  return out;
}

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t global_seed, std::string_view a,
                         std::string_view b) {
  std::uint64_t h = SplitMix64(global_seed);
  h = Fnv1a64(a, h);
  h = Fnv1a64("\x1f", h);
  h = Fnv1a64(b, h);
  return SplitMix64(h);
}

}  // namespace skyforge
