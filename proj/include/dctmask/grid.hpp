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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dctmask/error.hpp"

namespace dctmask {

struct SpatialDomain {};
struct FrequencyDomain {};

// K x K row-major real grid. The tag keeps spatial samples and DCT
// coefficients from being mixed up at call sites.
template <typename Domain>
class SquareGrid {
 public:
  SquareGrid() = default;

  explicit SquareGrid(std::size_t size, double fill = 0.0)
      : size_(size), values_(size * size, fill) {
    if (size == 0) throw InvalidArgument("grid size must be positive");
  }

  SquareGrid(std::size_t size, std::vector<double> values)
      : size_(size), values_(std::move(values)) {
    if (size == 0) throw InvalidArgument("grid size must be positive");
    if (values_.size() != size * size) {
      throw InvalidArgument("grid of size " + std::to_string(size) + " needs " +
                            std::to_string(size * size) + " values, got " +
                            std::to_string(values_.size()));
    }
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  double& operator()(std::size_t row, std::size_t col) { return values_[row * size_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return values_[row * size_ + col]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
  }

  friend bool operator==(const SquareGrid&, const SquareGrid&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<double> values_;
};

using SpatialGrid = SquareGrid<SpatialDomain>;
using CoeffGrid = SquareGrid<FrequencyDomain>;

// H x W row-major real image; the soft mask before thresholding.
class RealImage {
 public:
  RealImage() = default;

  RealImage(std::size_t height, std::size_t width, double fill = 0.0)
      : height_(height), width_(width), values_(height * width, fill) {}

  RealImage(std::size_t height, std::size_t width, std::vector<double> values)
      : height_(height), width_(width), values_(std::move(values)) {
    if (values_.size() != height * width) {
      throw InvalidArgument("image of " + std::to_string(height) + "x" + std::to_string(width) +
                            " needs " + std::to_string(height * width) + " values, got " +
                            std::to_string(values_.size()));
    }
  }

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }

  double& operator()(std::size_t row, std::size_t col) { return values_[row * width_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return values_[row * width_ + col]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const RealImage&, const RealImage&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> values_;
};

// H x W row-major bit grid, one byte per pixel holding 0 or 1.
class BinaryMask {
 public:
  BinaryMask() = default;

  BinaryMask(std::size_t height, std::size_t width, bool fill = false)
      : height_(height), width_(width), bits_(height * width, fill ? 1 : 0) {}

  BinaryMask(std::size_t height, std::size_t width, std::vector<std::uint8_t> bits)
      : height_(height), width_(width), bits_(std::move(bits)) {
    if (bits_.size() != height * width) {
      throw InvalidArgument("mask of " + std::to_string(height) + "x" + std::to_string(width) +
                            " needs " + std::to_string(height * width) + " bits, got " +
                            std::to_string(bits_.size()));
    }
    for (auto& b : bits_) {
      if (b > 1) throw InvalidArgument("mask bits must be 0 or 1");
    }
  }

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t pixel_count() const noexcept { return bits_.size(); }

  bool operator()(std::size_t row, std::size_t col) const { return bits_[row * width_ + col] != 0; }
  void set(std::size_t row, std::size_t col, bool on = true) { bits_[row * width_ + col] = on ? 1 : 0; }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Half-open pixel rectangle [top, bottom) x [left, right).
struct Box {
  std::size_t top = 0;
  std::size_t left = 0;
  std::size_t bottom = 0;
  std::size_t right = 0;

  std::size_t height() const noexcept { return bottom - top; }
  std::size_t width() const noexcept { return right - left; }
  bool empty() const noexcept { return bottom <= top || right <= left; }

  friend bool operator==(const Box&, const Box&) = default;
};

inline RealImage to_real(const BinaryMask& mask) {
  std::vector<double> values(mask.bits().begin(), mask.bits().end());
  return RealImage(mask.height(), mask.width(), std::move(values));
}

// bit = 1 iff value >= threshold.
inline BinaryMask binarize(const RealImage& image, double threshold) {
  std::vector<std::uint8_t> bits(image.values().size());
  std::transform(image.values().begin(), image.values().end(), bits.begin(),
                 [threshold](double v) { return static_cast<std::uint8_t>(v >= threshold ? 1 : 0); });
  return BinaryMask(image.height(), image.width(), std::move(bits));
}

inline RealImage to_image(const SpatialGrid& grid) {
  return RealImage(grid.size(), grid.size(),
                   std::vector<double>(grid.values().begin(), grid.values().end()));
}

inline SpatialGrid to_grid(const RealImage& image) {
  if (image.height() != image.width()) {
    throw InvalidArgument("spatial grid must be square, got " + std::to_string(image.height()) +
                          "x" + std::to_string(image.width()));
  }
  return SpatialGrid(image.height(), std::vector<double>(image.values().begin(), image.values().end()));
}

// Smallest box holding every set pixel; empty box for an empty mask.
inline Box tight_box(const BinaryMask& mask) {
  Box box{mask.height(), mask.width(), 0, 0};
  for (std::size_t r = 0; r < mask.height(); ++r) {
    for (std::size_t c = 0; c < mask.width(); ++c) {
      if (!mask(r, c)) continue;
      box.top = std::min(box.top, r);
      box.left = std::min(box.left, c);
      box.bottom = std::max(box.bottom, r + 1);
      box.right = std::max(box.right, c + 1);
    }
  }
  if (box.bottom == 0) return Box{};
  return box;
}

inline BinaryMask crop(const BinaryMask& mask, const Box& box) {
  if (box.bottom > mask.height() || box.right > mask.width() || box.empty()) {
    throw InvalidArgument("crop box outside mask or empty");
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(box.height() * box.width());
  for (std::size_t r = box.top; r < box.bottom; ++r) {
    auto row = mask.bits().subspan(r * mask.width() + box.left, box.width());
    bits.insert(bits.end(), row.begin(), row.end());
  }
  return BinaryMask(box.height(), box.width(), std::move(bits));
}

}  // namespace dctmask
