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
#include <cmath>
#include <cstddef>
#include <vector>

#include "dctmask/error.hpp"
#include "dctmask/grid.hpp"

namespace dctmask {

namespace detail {

struct AxisSample {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double frac = 0.0;
};

// Half-pixel centers: output i samples source coordinate
// (i + 0.5) * src / out - 0.5, clamped to [0, src - 1].
inline std::vector<AxisSample> axis_samples(std::size_t src, std::size_t out) {
  std::vector<AxisSample> samples(out);
  const double ratio = static_cast<double>(src) / static_cast<double>(out);
  const double last = static_cast<double>(src - 1);
  for (std::size_t i = 0; i < out; ++i) {
    const double pos = std::clamp((static_cast<double>(i) + 0.5) * ratio - 0.5, 0.0, last);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    samples[i].lo = lo;
    samples[i].hi = std::min(lo + 1, src - 1);
    samples[i].frac = pos - static_cast<double>(lo);
  }
  return samples;
}

}  // namespace detail

// Bilinear resampling. std::lerp keeps every output inside the range of its
// four neighbours and reproduces the input exactly when sizes match.
inline RealImage resize_bilinear(const RealImage& src, std::size_t out_height, std::size_t out_width) {
  if (src.height() == 0 || src.width() == 0 || out_height == 0 || out_width == 0) {
    throw InvalidArgument("resize_bilinear: dimensions must be positive");
  }
  const auto ys = detail::axis_samples(src.height(), out_height);
  const auto xs = detail::axis_samples(src.width(), out_width);
  // Horizontal pass over the source rows that are read, then vertical pass.
  // lerp(a, b, 0) == a, so zero fractions skip the call.
  std::vector<char> needed(src.height(), 0);
  for (const auto& sy : ys) needed[sy.lo] = needed[sy.hi] = 1;
  std::vector<double> rows(src.height() * out_width);
  for (std::size_t sr = 0; sr < src.height(); ++sr) {
    if (!needed[sr]) continue;
    double* dst = rows.data() + sr * out_width;
    for (std::size_t c = 0; c < out_width; ++c) {
      const auto& sx = xs[c];
      const double a = src(sr, sx.lo);
      dst[c] = sx.frac == 0.0 ? a : std::lerp(a, src(sr, sx.hi), sx.frac);
    }
  }
  RealImage out(out_height, out_width);
  for (std::size_t r = 0; r < out_height; ++r) {
    const auto& sy = ys[r];
    const double* top = rows.data() + sy.lo * out_width;
    const double* bottom = rows.data() + sy.hi * out_width;
    for (std::size_t c = 0; c < out_width; ++c) {
      out(r, c) = sy.frac == 0.0 ? top[c] : std::lerp(top[c], bottom[c], sy.frac);
    }
  }
  return out;
}

}  // namespace dctmask
