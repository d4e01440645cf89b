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

// Small TSV helpers shared by the file formats in this library.

#ifndef ENTAILPROBE_TSV_HPP_
#define ENTAILPROBE_TSV_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace entailprobe::tsv {

// Header line that opens every versioned entail-probe TSV file.
inline constexpr std::string_view kFormatLine = "#format=entailprobe-v1";

std::vector<std::string> split(std::string_view line, char sep = '\t');
std::string join(const std::vector<std::string>& fields, char sep = '\t');
std::string_view trim(std::string_view s);

// Reads a whole file into lines with trailing '\r' stripped. Throws DataError
// if the file cannot be opened.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Writes `content` to `path`, creating parent directories. Throws Error on
// I/O failure naming the path.
void write_file(const std::filesystem::path& path, std::string_view content);

// True if a field can be stored in a TSV cell without escaping.
bool is_cell_safe(std::string_view s);

// Fixed-notation double formatting used by every emitted table.
std::string format_double(double v, int precision = 6);

}  // namespace entailprobe::tsv

#endif  // ENTAILPROBE_TSV_HPP_
