// Copyright 2026 The lazymask Authors
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

#ifndef LAZYMASK_RNG_HPP_
#define LAZYMASK_RNG_HPP_

#include <cstdint>
#include <span>
#include <utility>

namespace lazymask {

/// Counter-based splittable 64-bit generator.
///
/// The n-th draw of a stream is a pure function of (seed, substream, n), so
/// results do not depend on the platform's standard-library distributions.
/// All floating-point and bounded-integer conversions are done here for the
/// same reason.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t substream = 0)
      : seed_(seed), substream_(substream), key_(Mix(Mix(seed) ^ Mix(substream + kSubstreamSalt))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t substream() const { return substream_; }
  std::uint64_t draws() const { return counter_; }

  std::uint64_t NextU64() { return Mix(key_ + kGolden * ++counter_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  /// Uniform integer in [0, bound). Unbiased (Lemire's multiply-shift with
  /// rejection).
  std::uint64_t Below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    Wide m = static_cast<Wide>(NextU64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<Wide>(NextU64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform integer in [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(Below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Independent child stream; the parent is not advanced.
  RandomStream Split(std::uint64_t id) const { return RandomStream(key_, id); }

  template <typename T>
  void Shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[Below(i)]);
    }
  }

 private:
  __extension__ using Wide = unsigned __int128;

  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSubstreamSalt = 0xd1b54a32d192ed03ULL;

  // SplitMix64 finalizer.
  static constexpr std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t substream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace lazymask

#endif  // LAZYMASK_RNG_HPP_
