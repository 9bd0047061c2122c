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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dctmask/codec.hpp"
#include "dctmask/error.hpp"
#include "dctmask/grid.hpp"

// File formats used by the command-line tool: binary PGM (P5, maxval 255)
// for masks and grids, and a plain-text container for mask vectors:
//
//   dctmask-vector 1
//   K <grid size>
//   N <dims>
//   <coefficient>      (N lines, 17 significant digits)

namespace dctmask {

struct GrayImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> pixels;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

inline std::string encode_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(img.pixels.begin(), img.pixels.end());
  return out;
}

inline GrayImage decode_pgm(std::string_view bytes) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_uint = [&](const char* what) -> std::size_t {
    skip_space();
    const std::size_t start = pos;
    std::size_t value = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      value = value * 10 + static_cast<std::size_t>(bytes[pos] - '0');
      if (value > (1u << 24)) throw ParseError(std::string("pgm: ") + what + " too large", start);
      ++pos;
    }
    if (pos == start) throw ParseError(std::string("pgm: expected ") + what, start);
    return value;
  };
  if (bytes.substr(0, 2) != "P5") throw ParseError("pgm: missing P5 magic", 0);
  pos = 2;
  GrayImage img;
  img.width = read_uint("width");
  img.height = read_uint("height");
  const std::size_t maxval = read_uint("maxval");
  if (maxval != 255) throw ParseError("pgm: only maxval 255 is supported", pos);
  if (img.width == 0 || img.height == 0) throw ParseError("pgm: empty image", pos);
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw ParseError("pgm: expected whitespace before pixel data", pos);
  }
  ++pos;
  const std::size_t n = img.width * img.height;
  if (bytes.size() - pos < n) throw ParseError("pgm: truncated pixel data", bytes.size());
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                    bytes.begin() + static_cast<std::ptrdiff_t>(pos + n));
  return img;
}

// Pixels >= 128 are foreground.
inline BinaryMask mask_from_gray(const GrayImage& img) {
  std::vector<std::uint8_t> bits(img.pixels.size());
  std::transform(img.pixels.begin(), img.pixels.end(), bits.begin(),
                 [](std::uint8_t p) { return static_cast<std::uint8_t>(p >= 128 ? 1 : 0); });
  return BinaryMask(img.height, img.width, std::move(bits));
}

inline GrayImage gray_from_mask(const BinaryMask& mask) {
  GrayImage img{mask.height(), mask.width(), {}};
  img.pixels.reserve(mask.pixel_count());
  for (auto b : mask.bits()) img.pixels.push_back(b ? 255 : 0);
  return img;
}

// [0, 1] maps linearly onto [0, 255]; values outside are clamped.
inline GrayImage gray_from_soft(const RealImage& image) {
  GrayImage img{image.height(), image.width(), {}};
  img.pixels.reserve(image.values().size());
  for (double v : image.values()) {
    img.pixels.push_back(static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
  }
  return img;
}

inline std::string encode_vector_file(const DctMaskVector& v) {
  std::string out = "dctmask-vector 1\nK " + std::to_string(v.grid_size()) + "\nN " + std::to_string(v.dims()) + "\n";
  char buf[40];
  for (double c : v.coeffs()) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", c);
    out += buf;
  }
  return out;
}

inline DctMaskVector decode_vector_file(std::string_view text) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::string {
    if (pos >= text.size()) throw ParseError("vector file: unexpected end after line " + std::to_string(line_no), pos);
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pos = end + 1;
    ++line_no;
    return line;
  };
  auto keyed_size = [&](const char* key) -> std::size_t {
    const std::size_t start = pos;
    const std::string line = next_line();
    const std::string prefix = std::string(key) + " ";
    if (line.rfind(prefix, 0) != 0) throw ParseError(std::string("vector file: expected '") + key + " <n>'", start);
    const std::string num = line.substr(prefix.size());
    if (num.empty() || num.size() > 9 || num.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError(std::string("vector file: bad ") + key + " value", start);
    }
    return static_cast<std::size_t>(std::stoul(num));
  };
  if (next_line() != "dctmask-vector 1") throw ParseError("vector file: missing 'dctmask-vector 1' header", 0);
  const std::size_t k = keyed_size("K");
  const std::size_t n = keyed_size("N");
  if (k == 0 || n == 0 || n > k * k) throw ParseError("vector file: N must lie in [1, K*K]");
  std::vector<double> coeffs;
  coeffs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t start = pos;
    const std::string line = next_line();
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (line.empty() || end != line.c_str() + line.size() || !std::isfinite(v)) {
      throw ParseError("vector file: bad coefficient on line " + std::to_string(line_no), start);
    }
    coeffs.push_back(v);
  }
  while (pos < text.size()) {
    const std::size_t start = pos;
    if (!next_line().empty()) throw ParseError("vector file: trailing data", start);
  }
  return DctMaskVector(k, std::move(coeffs));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ParseError("write failed for " + path.string());
}

}  // namespace dctmask
