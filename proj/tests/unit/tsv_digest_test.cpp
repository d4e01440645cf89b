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

#include <gtest/gtest.h>

#include "entailprobe/digest.hpp"
#include "entailprobe/error.hpp"
#include "entailprobe/tsv.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

namespace entailprobe {
namespace {

using testing::TempDir;

TEST(Tsv, SplitKeepsEmptyFields) {
  EXPECT_EQ(tsv::split("a\t\tb\t"), (std::vector<std::string>{"a", "", "b", ""}));
  EXPECT_EQ(tsv::split("solo"), (std::vector<std::string>{"solo"}));
}

TEST(Tsv, JoinInvertsSplit) {
  for (const std::string line : {"a\tb\tc", "x", "\t\t", "one\t two "}) {
    EXPECT_EQ(tsv::join(tsv::split(line)), line);
  }
}

TEST(Tsv, Trim) {
  EXPECT_EQ(tsv::trim("  a b \t"), "a b");
  EXPECT_EQ(tsv::trim("   "), "");
}

TEST(Tsv, CellSafety) {
  EXPECT_TRUE(tsv::is_cell_safe("plain text"));
  EXPECT_FALSE(tsv::is_cell_safe("tab\there"));
  EXPECT_FALSE(tsv::is_cell_safe("new\nline"));
}

TEST(Tsv, FormatDoubleIsFixed) {
  EXPECT_EQ(tsv::format_double(0.5), "0.500000");
  EXPECT_EQ(tsv::format_double(-0.0041), "-0.004100");
  EXPECT_EQ(tsv::format_double(1.0 / 3.0, 3), "0.333");
}

TEST(Tsv, WriteCreatesParentsAndReadStripsCarriageReturns) {
  TempDir dir;
  const auto path = dir / "a/b/c.tsv";
  tsv::write_file(path, "one\r\ntwo\n");
  EXPECT_EQ(tsv::read_lines(path), (std::vector<std::string>{"one", "two"}));
}

TEST(Tsv, ReadingMissingFileIsDataError) {
  EXPECT_THROW(tsv::read_lines("/nonexistent/x.tsv"), DataError);
}

TEST(Digest, KnownSha256Vectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Digest, FileDigestMatchesContentDigest) {
  TempDir dir;
  tsv::write_file(dir / "f", "hello\n");
  EXPECT_EQ(sha256_file(dir / "f"), sha256_hex("hello\n"));
  EXPECT_THROW(sha256_file(dir / "missing"), DataError);
}

}  // namespace
}  // namespace entailprobe
