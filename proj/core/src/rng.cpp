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

#include "entailprobe/rng.hpp"

#include <cassert>

namespace entailprobe {

namespace {
constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t splitmix64_mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string stream_key(std::initializer_list<std::string_view> parts) {
  std::string key;
  bool first = true;
  for (auto part : parts) {
    if (!first) key.push_back('\x1f');
    key.append(part);
    first = false;
  }
  return key;
}

KeyedRng::KeyedRng(Seed seed, std::string_view key)
    : base_(seed.value ^ fnv1a64(key)) {}

uint64_t KeyedRng::next_u64() {
  ++counter_;
  return splitmix64_mix(base_ + counter_ * kGamma);
}

double KeyedRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t KeyedRng::uniform_index(uint64_t n) {
  assert(n > 0);
  const uint64_t reject_below = (0 - n) % n;
  while (true) {
    const uint64_t x = next_u64();
    if (x >= reject_below) return x % n;
  }
}

}  // namespace entailprobe
