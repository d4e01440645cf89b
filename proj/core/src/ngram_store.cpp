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

#include "entailprobe/ngram_store.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "entailprobe/error.hpp"
#include "entailprobe/tsv.hpp"

namespace entailprobe {
namespace {

constexpr std::string_view kMagic = "NGIX1";
constexpr uint32_t kVersion = 1;

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = tsv::trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

class Writer {
 public:
  void u32(uint32_t v) { put(v, 4); }
  void i32(int32_t v) { put(static_cast<uint32_t>(v), 4); }
  void u64(uint64_t v) { put(v, 8); }
  void f64(double v) { put(std::bit_cast<uint64_t>(v), 8); }
  void bytes(std::string_view s) { out_.append(s); }
  void str(std::string_view s) {
    u32(static_cast<uint32_t>(s.size()));
    bytes(s);
  }
  std::string take() { return std::move(out_); }

 private:
  void put(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  uint32_t u32() { return static_cast<uint32_t>(get(4)); }
  int32_t i32() { return static_cast<int32_t>(static_cast<uint32_t>(get(4))); }
  uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(get(8)); }
  std::string_view bytes(size_t n) {
    need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string str() { return std::string(bytes(u32())); }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(size_t n) const {
    if (in_.size() - pos_ < n) throw DataError("n-gram index is truncated");
  }
  uint64_t get(int n) {
    need(static_cast<size_t>(n));
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<size_t>(n);
    return v;
  }
  std::string_view in_;
  size_t pos_ = 0;
};

}  // namespace

std::string normalize_phrase(std::string_view phrase) {
  std::string out;
  bool pending_space = false;
  for (char c : phrase) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

NgramStore::NgramStore(std::string source, YearRange span)
    : source_(std::move(source)), span_(span) {
  if (span_.first > span_.last) {
    throw DataError(fmt::format("n-gram year span [{}, {}] is empty",
                                span_.first, span_.last));
  }
}

void NgramStore::set(std::string_view phrase, int year,
                     double relative_frequency) {
  if (!(relative_frequency >= 0.0) || !std::isfinite(relative_frequency)) {
    throw DataError(fmt::format("invalid frequency {} for '{}' in {}",
                                relative_frequency, phrase, year));
  }
  if (year < span_.first || year > span_.last) {
    throw DataError(fmt::format("year {} outside store span [{}, {}]", year,
                                span_.first, span_.last));
  }
  auto it = phrases_.find(phrase);
  if (it == phrases_.end()) it = phrases_.emplace(std::string(phrase), Series{}).first;
  it->second[year] = relative_frequency;
}

const NgramStore::Series* NgramStore::find(std::string_view phrase) const {
  const auto it = phrases_.find(phrase);
  return it == phrases_.end() ? nullptr : &it->second;
}

NgramStore NgramStore::scaled(double factor) const {
  NgramStore out(source_, span_);
  for (const auto& [phrase, series] : phrases_) {
    for (const auto& [year, f] : series) out.set(phrase, year, f * factor);
  }
  return out;
}

NgramStore NgramStore::ingest(const std::filesystem::path& dump,
                              const std::filesystem::path& totals,
                              IngestStats* stats) {
  if (!std::filesystem::exists(totals)) {
    throw DataError(fmt::format("n-gram totals file {} not found",
                                totals.string()));
  }
  std::map<int, uint64_t> year_totals;
  const auto total_lines = tsv::read_lines(totals);
  for (size_t i = 0; i < total_lines.size(); ++i) {
    const auto& line = total_lines[i];
    if (tsv::trim(line).empty() || line.front() == '#') continue;
    const auto f = tsv::split(line);
    int year = 0;
    uint64_t total = 0;
    if (f.size() < 2 || !parse_number(f[0], year) || !parse_number(f[1], total)) {
      throw DataError(fmt::format("{}:{}: expected 'year<TAB>total_count'",
                                  totals.string(), i + 1));
    }
    year_totals[year] += total;
  }
  if (year_totals.empty()) {
    throw DataError(fmt::format("{} has no year totals", totals.string()));
  }

  IngestStats local;
  std::map<std::string, std::map<int, uint64_t>, std::less<>> counts;
  for (const auto& line : tsv::read_lines(dump)) {
    if (tsv::trim(line).empty() || line.front() == '#') continue;
    ++local.rows_read;
    const auto f = tsv::split(line);
    int year = 0;
    uint64_t match = 0;
    uint64_t volumes = 0;
    const bool ok = (f.size() == 3 || f.size() == 4) &&
                    !tsv::trim(f[0]).empty() && parse_number(f[1], year) &&
                    parse_number(f[2], match) &&
                    (f.size() == 3 || parse_number(f[3], volumes));
    const auto total = year_totals.find(year);
    if (!ok || total == year_totals.end() || total->second == 0) {
      ++local.rows_skipped;
      continue;
    }
    counts[normalize_phrase(f[0])][year] += match;
  }

  NgramStore store(dump.stem().string(),
                   {year_totals.begin()->first, year_totals.rbegin()->first});
  for (const auto& [phrase, by_year] : counts) {
    for (const auto& [year, match] : by_year) {
      store.set(phrase, year,
                static_cast<double>(match) /
                    static_cast<double>(year_totals.at(year)));
    }
  }
  if (stats) *stats = local;
  return store;
}

std::string NgramStore::serialize() const {
  Writer w;
  w.bytes(kMagic);
  w.u32(kVersion);
  w.str(source_);
  w.i32(span_.first);
  w.i32(span_.last);
  w.u64(phrases_.size());
  for (const auto& [phrase, series] : phrases_) {
    w.str(phrase);
    w.u32(static_cast<uint32_t>(series.size()));
    for (const auto& [year, f] : series) {
      w.i32(year);
      w.f64(f);
    }
  }
  return w.take();
}

NgramStore NgramStore::deserialize(std::string_view bytes) {
  Reader r(bytes);
  if (bytes.size() < kMagic.size() || r.bytes(kMagic.size()) != kMagic) {
    throw DataError("not an n-gram index (bad magic)");
  }
  const uint32_t version = r.u32();
  if (version != kVersion) {
    throw DataError(fmt::format("unsupported n-gram index version {}", version));
  }
  std::string source = r.str();
  const int first = r.i32();
  const int last = r.i32();
  NgramStore store(std::move(source), {first, last});
  const uint64_t n = r.u64();
  for (uint64_t i = 0; i < n; ++i) {
    const std::string phrase = r.str();
    const uint32_t years = r.u32();
    for (uint32_t j = 0; j < years; ++j) {
      const int year = r.i32();
      store.set(phrase, year, r.f64());
    }
  }
  if (!r.done()) throw DataError("trailing bytes in n-gram index");
  return store;
}

NgramStore NgramStore::load(const std::filesystem::path& index) {
  std::ifstream in(index, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {}", index.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

void NgramStore::save(const std::filesystem::path& index) const {
  tsv::write_file(index, serialize());
}

double avg_frequency(const NgramStore& store, std::string_view phrase,
                     YearRange years) {
  if (tsv::trim(phrase).empty()) throw DataError("empty phrase");
  if (years.first > years.last) {
    throw ConfigError(fmt::format("year range [{}, {}] is empty", years.first,
                                  years.last));
  }
  const auto span = store.span();
  if (years.first < span.first || years.last > span.last) {
    throw ConfigError(fmt::format(
        "year range [{}, {}] is outside the n-gram store span [{}, {}]",
        years.first, years.last, span.first, span.last));
  }
  const auto* series = store.find(phrase);
  if (!series) return 0.0;
  double sum = 0.0;
  for (auto it = series->lower_bound(years.first);
       it != series->end() && it->first <= years.last; ++it) {
    sum += it->second;
  }
  return sum / static_cast<double>(years.length());
}

}  // namespace entailprobe
