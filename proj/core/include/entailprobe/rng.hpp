/*
 * Copyright 2026 The entail-probe Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Portable keyed random streams.
//
// Every random decision in the library is drawn from a stream identified by
// (seed, key), where key is a string such as "rp\x1fsample-17". Streams are
// SplitMix64 run in counter mode:
//
//   base    = seed XOR fnv1a64(key)
//   draw[i] = mix64(base + (i + 1) * 0x9E3779B97F4A7C15)      i = 0, 1, ...
//   mix64(z): z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//             z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//             return z ^ (z >> 31)
//
// next_double() = (draw >> 11) * 2^-53. uniform_index(n) rejects draws below
// (2^64 mod n) and returns draw % n. Outcomes therefore depend only on the
// seed and the key, never on evaluation order, and can be reproduced in any
// language from this description.

#ifndef ENTAILPROBE_RNG_HPP_
#define ENTAILPROBE_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace entailprobe {

// 64-bit seed for every randomized transformation and simulation.
struct Seed {
  uint64_t value = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

uint64_t fnv1a64(std::string_view data);
uint64_t splitmix64_mix(uint64_t z);

// Joins key parts with the unit separator 0x1f.
std::string stream_key(std::initializer_list<std::string_view> parts);

class KeyedRng {
 public:
  static constexpr std::string_view kGeneratorName =
      "splitmix64-counter+fnv1a64-key";

  KeyedRng(Seed seed, std::string_view key);

  uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double next_double();
  // Uniform in [0, n). n must be > 0.
  uint64_t uniform_index(uint64_t n);

 private:
  uint64_t base_;
  uint64_t counter_ = 0;
};

}  // namespace entailprobe

#endif  // ENTAILPROBE_RNG_HPP_
