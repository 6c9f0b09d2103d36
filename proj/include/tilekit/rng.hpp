/**
 * Copyright 2026 The tilekit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "tilekit/error.hpp"

namespace tilekit {

/// FNV-1a, the stable 64-bit hash used to derive per-item seeds. Standard
/// library hashes vary across implementations; this one is pinned so seeded
/// runs reproduce byte-identically everywhere.
class StableHash {
 public:
  StableHash& feed(std::string_view s) {
    for (unsigned char c : s) mix(c);
    mix(0xFF);  // separator, so feed("ab").feed("c") != feed("a").feed("bc")
    return *this;
  }
  StableHash& feed(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(v >> (8 * i)));
    mix(0xFE);
    return *this;
  }
  std::uint64_t value() const { return state_; }

 private:
  void mix(unsigned char c) {
    state_ ^= c;
    state_ *= 1099511628211ull;
  }
  std::uint64_t state_ = 14695981039346656037ull;
};

inline std::uint64_t stable_hash(std::uint64_t seed, std::string_view s, std::uint64_t index = 0) {
  return StableHash().feed(seed).feed(s).feed(index).value();
}

/// Deterministic RNG. mt19937_64 has a fully specified bit stream; the
/// distributions are implemented here because the standard library's are not
/// reproducible across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound). bound must be > 0.
  std::uint64_t uniform_int(std::uint64_t bound) {
    if (bound == 0) throw Error("uniform_int needs a positive bound");
    return next_u64() % bound;
  }

  /// Uniform in [0, 1).
  double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

  /// Gaussian via Box-Muller (pinned algorithm, spare value cached).
  double gaussian(double sigma) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_ * sigma;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta) * sigma;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tilekit
