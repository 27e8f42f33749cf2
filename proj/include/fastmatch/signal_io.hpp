// Copyright 2026 The fastmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Signal interchange formats.
//
//   binary: 8-byte little-endian unsigned length N, then N little-endian
//           IEEE-754 binary64 samples.
//   csv:    one decimal value per line, no header.

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "fastmatch/error.hpp"
#include "fastmatch/signal.hpp"

namespace fastmatch {

namespace detail {

inline void put_u64_le(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(bytes.data(), bytes.size());
}

inline bool get_u64_le(std::istream& is, std::uint64_t& v) {
  std::array<unsigned char, 8> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return true;
}

}  // namespace detail

inline void write_signal_binary(const std::filesystem::path& path, const Signal& x) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  detail::put_u64_le(os, x.size());
  for (double v : x.samples()) detail::put_u64_le(os, std::bit_cast<std::uint64_t>(v));
  if (!os) throw IoError("write failed: " + path.string());
}

inline Signal read_signal_binary(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  std::uint64_t n = 0;
  if (!detail::get_u64_le(is, n)) throw IoError("truncated length prefix: " + path.string());
  if (n == 0) throw IoError("empty signal in " + path.string());

  std::error_code ec;
  const auto file_size = std::filesystem::file_size(path, ec);
  if (!ec && (file_size - 8) / 8 < n) {
    throw IoError("length prefix exceeds payload: " + path.string());
  }
  std::vector<double> samples(static_cast<std::size_t>(n));
  for (auto& v : samples) {
    std::uint64_t raw = 0;
    if (!detail::get_u64_le(is, raw)) throw IoError("truncated payload: " + path.string());
    v = std::bit_cast<double>(raw);
  }
  return Signal(std::move(samples));
}

inline void write_signal_csv(const std::filesystem::path& path, const Signal& x) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << std::setprecision(17);
  for (double v : x.samples()) os << v << '\n';
  if (!os) throw IoError("write failed: " + path.string());
}

inline Signal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    if (*begin == '+') ++begin;
    double v = 0.0;
    const auto [ptr, err] = std::from_chars(begin, end, v);
    if (err != std::errc() || ptr != end) {
      throw IoError("bad value on line " + std::to_string(line_no) + " of " + path.string());
    }
    samples.push_back(v);
  }
  if (samples.empty()) throw IoError("empty signal in " + path.string());
  return Signal(std::move(samples));
}

/// Picks the format from the extension: ".csv" is CSV, anything else binary.
inline Signal read_signal(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? read_signal_csv(path) : read_signal_binary(path);
}

inline void write_signal(const std::filesystem::path& path, const Signal& x) {
  if (path.extension() == ".csv") {
    write_signal_csv(path, x);
  } else {
    write_signal_binary(path, x);
  }
}

}  // namespace fastmatch
