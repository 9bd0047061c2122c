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
#include <span>
#include <string>
#include <vector>

#include "dctmask/error.hpp"
#include "dctmask/grid.hpp"

namespace dctmask {

// Flat vertex list x0, y0, x1, y1, ... in pixel coordinates (pixel (r, c)
// covers [c, c+1) x [r, r+1)).
using Polygon = std::vector<double>;

namespace detail {

inline void check_polygon(const Polygon& poly) {
  if (poly.size() < 6 || poly.size() % 2 != 0) {
    throw InvalidArgument("polygon needs at least 3 vertices as x,y pairs, got " + std::to_string(poly.size()) +
                          " coordinates");
  }
}

// Row span [first, last] a polygon can touch, clipped to [0, height).
inline bool polygon_rows(const Polygon& poly, std::size_t height, std::size_t& first, std::size_t& last) {
  double lo = poly[1];
  double hi = poly[1];
  for (std::size_t i = 3; i < poly.size(); i += 2) {
    lo = std::min(lo, poly[i]);
    hi = std::max(hi, poly[i]);
  }
  // Row r samples y = r + 0.5 and needs lo <= r + 0.5 < hi.
  const double r0 = std::ceil(lo - 0.5);
  const double r1 = std::ceil(hi - 0.5) - 1.0;
  if (r1 < 0.0 || r0 > static_cast<double>(height) - 1.0 || r1 < r0) return false;
  first = static_cast<std::size_t>(std::max(r0, 0.0));
  last = static_cast<std::size_t>(std::min(r1, static_cast<double>(height) - 1.0));
  return true;
}

// Scanline fill of one polygon under the even-odd rule, sampling pixel
// centres. An edge counts for row centre yc when min(y0,y1) <= yc < max(y0,y1)
// and a span [xa, xb) covers centre xc when xa <= xc < xb: centres exactly
// on top or left edges are in, bottom or right edges out.
// Writes into `bits`, a row-major buffer covering `window` of the image.
inline void fill_polygon(const Polygon& poly, std::size_t height, const Box& window,
                         std::vector<std::uint8_t>& bits) {
  std::size_t first = 0;
  std::size_t last = 0;
  if (!polygon_rows(poly, height, first, last)) return;
  first = std::max(first, window.top);
  last = std::min(last, window.bottom - 1);
  const std::size_t stride = window.width();
  const std::size_t n = poly.size() / 2;
  std::vector<double> xs;
  for (std::size_t r = first; r <= last && first <= last; ++r) {
    const double yc = static_cast<double>(r) + 0.5;
    xs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      const double x0 = poly[2 * i];
      const double y0 = poly[2 * i + 1];
      const double x1 = poly[2 * j];
      const double y1 = poly[2 * j + 1];
      if ((y0 <= yc && yc < y1) || (y1 <= yc && yc < y0)) {
        xs.push_back(x0 + (yc - y0) * (x1 - x0) / (y1 - y0));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t p = 0; p + 1 < xs.size(); p += 2) {
      // columns c with xa <= c + 0.5 < xb
      const double c0 = std::max(std::ceil(xs[p] - 0.5), static_cast<double>(window.left));
      const double c1 = std::min(std::ceil(xs[p + 1] - 0.5), static_cast<double>(window.right));
      for (double c = c0; c < c1; c += 1.0) {
        bits[(r - window.top) * stride + (static_cast<std::size_t>(c) - window.left)] = 1;
      }
    }
  }
}

}  // namespace detail

// Union of the filled polygons. Coordinates may be fractional or lie outside
// the image; pixels outside are clipped.
inline BinaryMask rasterize_polygons(std::span<const Polygon> polygons, std::size_t height, std::size_t width) {
  for (const auto& p : polygons) detail::check_polygon(p);
  std::vector<std::uint8_t> bits(height * width, 0);
  const Box full{0, 0, height, width};
  if (!full.empty()) {
    for (const auto& p : polygons) detail::fill_polygon(p, height, full, bits);
  }
  return BinaryMask(height, width, std::move(bits));
}

// Same pixels as rasterize_polygons(...) restricted to `window`, without
// materializing the full image.
inline BinaryMask rasterize_polygons(std::span<const Polygon> polygons, std::size_t height, std::size_t width,
                                     const Box& window) {
  for (const auto& p : polygons) detail::check_polygon(p);
  if (window.empty() || window.bottom > height || window.right > width) {
    throw InvalidArgument("rasterize_polygons: window outside image or empty");
  }
  std::vector<std::uint8_t> bits(window.height() * window.width(), 0);
  for (const auto& p : polygons) detail::fill_polygon(p, height, window, bits);
  return BinaryMask(window.height(), window.width(), std::move(bits));
}

// Pixel box that can contain set pixels of the polygons; empty if none.
inline Box polygon_extent(std::span<const Polygon> polygons, std::size_t height, std::size_t width) {
  double x_lo = HUGE_VAL, x_hi = -HUGE_VAL, y_lo = HUGE_VAL, y_hi = -HUGE_VAL;
  for (const auto& p : polygons) {
    for (std::size_t i = 0; i + 1 < p.size(); i += 2) {
      x_lo = std::min(x_lo, p[i]);
      x_hi = std::max(x_hi, p[i]);
      y_lo = std::min(y_lo, p[i + 1]);
      y_hi = std::max(y_hi, p[i + 1]);
    }
  }
  if (!(x_lo <= x_hi && y_lo <= y_hi)) return Box{};
  auto clip = [](double v, std::size_t limit) {
    return static_cast<std::size_t>(std::clamp(v, 0.0, static_cast<double>(limit)));
  };
  Box box{clip(std::floor(y_lo), height), clip(std::floor(x_lo), width), clip(std::ceil(y_hi) + 1.0, height),
          clip(std::ceil(x_hi) + 1.0, width)};
  if (box.empty()) return Box{};
  return box;
}

inline BinaryMask rasterize_polygon(const Polygon& polygon, std::size_t height, std::size_t width) {
  return rasterize_polygons(std::span<const Polygon>(&polygon, 1), height, width);
}

}  // namespace dctmask
