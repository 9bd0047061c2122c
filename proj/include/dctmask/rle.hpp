// Copyright 2026 The DCT Mask Authors. All Rights Reserved.
//
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dctmask/error.hpp"
#include "dctmask/grid.hpp"

// Run-length coding of binary masks in the COCO convention: runs are taken
// in column-major order and alternate 0, 1, 0, ... starting with zeros. The
// compressed string form stores each count as 5-bit little-endian groups
// in characters '0'..'o' (value + 48); bit 0x20 marks a continuation and
// bit 0x10 of the last group is the sign. Counts from index 3 on are stored
// as the difference to the count two positions earlier.

namespace dctmask {

using RleCounts = std::vector<std::uint32_t>;

inline BinaryMask decode_rle(std::span<const std::uint32_t> counts, std::size_t height, std::size_t width) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total != static_cast<std::uint64_t>(height) * width) {
    throw InvalidArgument("decode_rle: counts sum to " + std::to_string(total) + ", expected " +
                          std::to_string(height * width));
  }
  std::vector<std::uint8_t> bits(height * width, 0);
  std::size_t pos = 0;
  std::uint8_t value = 0;
  for (auto c : counts) {
    for (std::size_t j = 0; j < c; ++j, ++pos) {
      if (value) bits[(pos % height) * width + pos / height] = 1;
    }
    value ^= 1;
  }
  return BinaryMask(height, width, std::move(bits));
}

inline RleCounts rle_counts(const BinaryMask& mask) {
  RleCounts counts;
  std::uint8_t current = 0;
  std::uint32_t run = 0;
  for (std::size_t c = 0; c < mask.width(); ++c) {
    for (std::size_t r = 0; r < mask.height(); ++r) {
      const std::uint8_t bit = mask(r, c) ? 1 : 0;
      if (bit != current) {
        counts.push_back(run);
        run = 0;
        current = bit;
      }
      ++run;
    }
  }
  counts.push_back(run);
  return counts;
}

inline std::string encode_counts_string(std::span<const std::uint32_t> counts) {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    std::int64_t x = counts[i];
    if (i > 2) x -= static_cast<std::int64_t>(counts[i - 2]);
    bool more = true;
    while (more) {
      char c = static_cast<char>(x & 0x1f);
      x >>= 5;  // arithmetic shift keeps the sign
      more = (c & 0x10) ? x != -1 : x != 0;
      if (more) c |= 0x20;
      out.push_back(static_cast<char>(c + 48));
    }
  }
  return out;
}

inline RleCounts decode_counts_string(std::string_view encoded) {
  RleCounts counts;
  std::size_t k = 0;
  while (k < encoded.size()) {
    const std::size_t start = k;
    std::uint64_t x = 0;
    unsigned shift = 0;
    bool more = true;
    while (more) {
      if (k >= encoded.size()) throw ParseError("compressed RLE: truncated count", start);
      const int c = static_cast<unsigned char>(encoded[k]) - 48;
      if (c < 0 || c > 63) throw ParseError("compressed RLE: byte out of range", k);
      if (shift > 55) throw ParseError("compressed RLE: count too long", start);
      x |= static_cast<std::uint64_t>(c & 0x1f) << shift;
      more = (c & 0x20) != 0;
      ++k;
      shift += 5;
      if (!more && (c & 0x10)) x |= ~std::uint64_t{0} << shift;
    }
    auto value = static_cast<std::int64_t>(x);
    if (counts.size() > 2) value += counts[counts.size() - 2];
    if (value < 0 || value > std::numeric_limits<std::uint32_t>::max()) {
      throw ParseError("compressed RLE: count out of range", start);
    }
    counts.push_back(static_cast<std::uint32_t>(value));
  }
  return counts;
}

inline std::string encode_rle(const BinaryMask& mask) { return encode_counts_string(rle_counts(mask)); }

inline BinaryMask decode_compressed_rle(std::string_view encoded, std::size_t height, std::size_t width) {
  const RleCounts counts = decode_counts_string(encoded);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total != static_cast<std::uint64_t>(height) * width) {
    throw ParseError("compressed RLE: counts sum to " + std::to_string(total) + ", expected " +
                     std::to_string(height * width));
  }
  return decode_rle(counts, height, width);
}

}  // namespace dctmask
