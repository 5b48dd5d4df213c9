// Copyright 2026 The iontrace Authors
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

#ifndef IONTRACE_RNG_HPP
#define IONTRACE_RNG_HPP

#include <cstdint>

namespace iontrace {

// Counter-derived random substreams (splitmix64). Every shot of every run gets
// its own stream keyed by (seed, stream, index), so results do not depend on
// execution order or thread count. Reruns with the same keys reproduce draws
// bit for bit.
class RngStream {
 public:
  explicit RngStream(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // 64-bit multiply-shift; bias is negligible for the small n used here.
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Derive the substream for (seed, stream, index). `stream` identifies the run
/// (e.g. the benchmark unitary index) and `index` the shot within it.
inline RngStream substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t s = detail::mix64(seed + 0x9e3779b97f4a7c15ULL);
  s = detail::mix64(s ^ (stream + 0xbf58476d1ce4e5b9ULL));
  s = detail::mix64(s ^ (index + 0x94d049bb133111ebULL));
  return RngStream(s);
}

}  // namespace iontrace

#endif  // IONTRACE_RNG_HPP
