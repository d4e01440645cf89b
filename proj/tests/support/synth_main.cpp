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

// Writes a synthetic corpus: ep-synth <dir> [pairs] [seed]

#include <cstdlib>
#include <iostream>
#include <string>

#include "synthetic.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: ep-synth <dir> [pairs] [seed]\n";
    return 2;
  }
  entailprobe::testing::SyntheticSpec spec;
  if (argc > 2) spec.pairs = std::stoul(argv[2]);
  if (argc > 3) spec.seed = std::stoull(argv[3]);
  entailprobe::testing::write_corpus(entailprobe::testing::make_corpus(spec), argv[1]);
  return 0;
}
