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
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "dctmask/error.hpp"
#include "dctmask/grid.hpp"
#include "dctmask/polygon.hpp"

// Dataset-free mask corpus: filled ellipses, convex polygons and unions of
// two such shapes on random canvases, each cropped to its tight box.
// Only the raw mt19937_64 stream is consumed (its output is fixed by the
// standard), so a seed gives the same corpus on every platform.

namespace dctmask {

struct SizeRange {
  std::size_t min = 32;
  std::size_t max = 256;
};

namespace detail {

class ShapeRng {
 public:
  explicit ShapeRng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  std::size_t uniform_int(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

inline void paint_ellipse(ShapeRng& rng, double cx, double cy, double rx, double ry, std::vector<std::uint8_t>& bits,
                          std::size_t height, std::size_t width) {
  const double theta = rng.uniform(0.0, std::numbers::pi);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const double dx = static_cast<double>(c) + 0.5 - cx;
      const double dy = static_cast<double>(r) + 0.5 - cy;
      const double u = (dx * ct + dy * st) / rx;
      const double v = (-dx * st + dy * ct) / ry;
      if (u * u + v * v <= 1.0) bits[r * width + c] = 1;
    }
  }
}

inline void paint_convex(ShapeRng& rng, double cx, double cy, double rx, double ry, std::vector<std::uint8_t>& bits,
                         std::size_t height, std::size_t width) {
  const std::size_t vertices = rng.uniform_int(3, 10);
  std::vector<double> angles(vertices);
  for (auto& a : angles) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  std::sort(angles.begin(), angles.end());
  Polygon poly;
  for (double a : angles) {
    const double scale = rng.uniform(0.7, 1.0);
    poly.push_back(cx + scale * rx * std::cos(a));
    poly.push_back(cy + scale * ry * std::sin(a));
  }
  const BinaryMask m = rasterize_polygon(poly, height, width);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] |= m.bits()[i];
}

inline void paint_shape(ShapeRng& rng, bool ellipse, double cx, double cy, double rx, double ry,
                        std::vector<std::uint8_t>& bits, std::size_t height, std::size_t width) {
  if (ellipse) {
    paint_ellipse(rng, cx, cy, rx, ry, bits, height, width);
  } else {
    paint_convex(rng, cx, cy, rx, ry, bits, height, width);
  }
}

}  // namespace detail

inline std::vector<BinaryMask> generate_synthetic(std::uint64_t seed, std::size_t count, SizeRange sizes = {}) {
  if (count == 0) throw InvalidArgument("generate_synthetic: count must be positive");
  if (sizes.min == 0 || sizes.max < sizes.min) throw InvalidArgument("generate_synthetic: bad size range");
  detail::ShapeRng rng(seed);
  std::vector<BinaryMask> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::size_t h = rng.uniform_int(sizes.min, sizes.max);
    const std::size_t w = rng.uniform_int(sizes.min, sizes.max);
    const auto hd = static_cast<double>(h);
    const auto wd = static_cast<double>(w);
    std::vector<std::uint8_t> bits(h * w, 0);
    const std::size_t kind = rng.uniform_int(0, 2);
    if (kind < 2) {
      detail::paint_shape(rng, kind == 0, wd / 2, hd / 2, wd * rng.uniform(0.3, 0.5), hd * rng.uniform(0.3, 0.5),
                          bits, h, w);
    } else {
      for (int part = 0; part < 2; ++part) {
        const bool ellipse = rng.uniform_int(0, 1) == 0;
        const double cx = wd * rng.uniform(0.3, 0.7);
        const double cy = hd * rng.uniform(0.3, 0.7);
        detail::paint_shape(rng, ellipse, cx, cy, wd * rng.uniform(0.15, 0.3), hd * rng.uniform(0.15, 0.3), bits, h,
                            w);
      }
    }
    BinaryMask canvas(h, w, std::move(bits));
    const Box box = tight_box(canvas);
    if (box.empty()) continue;
    out.push_back(crop(canvas, box));
  }
  return out;
}

}  // namespace dctmask
