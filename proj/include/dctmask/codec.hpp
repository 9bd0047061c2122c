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
#include <utility>
#include <vector>

#include "dctmask/error.hpp"
#include "dctmask/grid.hpp"
#include "dctmask/resize.hpp"
#include "dctmask/transform.hpp"

namespace dctmask {

enum class ResizeConvention { kHalfPixelCenters };

struct CodecConfig {
  std::size_t grid_size = 128;  // K
  std::size_t dims = 300;       // N
  double binarize_threshold = 0.5;
  ResizeConvention resize = ResizeConvention::kHalfPixelCenters;

  void validate() const {
    if (grid_size == 0) throw InvalidArgument("codec: grid size must be positive");
    if (dims == 0 || dims > grid_size * grid_size) {
      throw InvalidArgument("codec: N=" + std::to_string(dims) + " outside [1, " +
                            std::to_string(grid_size * grid_size) + "]");
    }
    if (!(binarize_threshold > 0.0 && binarize_threshold < 1.0)) {
      throw InvalidArgument("codec: binarize threshold must lie in (0, 1)");
    }
  }
};

// The compact mask representation: the first N zigzag DCT coefficients of
// the K x K resized mask.
class DctMaskVector {
 public:
  DctMaskVector() = default;

  DctMaskVector(std::size_t grid_size, std::vector<double> coeffs)
      : grid_size_(grid_size), coeffs_(std::move(coeffs)) {
    if (grid_size_ == 0) throw InvalidArgument("mask vector: grid size must be positive");
    if (coeffs_.empty() || coeffs_.size() > grid_size_ * grid_size_) {
      throw InvalidArgument("mask vector: N=" + std::to_string(coeffs_.size()) + " outside [1, " +
                            std::to_string(grid_size_ * grid_size_) + "]");
    }
    if (!std::all_of(coeffs_.begin(), coeffs_.end(), [](double v) { return std::isfinite(v); })) {
      throw InvalidArgument("mask vector: non-finite coefficient");
    }
  }

  std::size_t grid_size() const noexcept { return grid_size_; }
  std::size_t dims() const noexcept { return coeffs_.size(); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const DctMaskVector&, const DctMaskVector&) = default;

 private:
  std::size_t grid_size_ = 0;
  std::vector<double> coeffs_;
};

inline void check_mask(const BinaryMask& mask) {
  if (mask.height() == 0 || mask.width() == 0) throw InvalidArgument("mask must be non-empty in both dimensions");
}

// Bilinear resize of the mask to K x K. This is the grid the DCT sees.
inline SpatialGrid resample_to_grid(const BinaryMask& mask, std::size_t grid_size) {
  check_mask(mask);
  return to_grid(resize_bilinear(to_real(mask), grid_size, grid_size));
}

inline DctMaskVector encode(const BinaryMask& mask, const CodecConfig& config = {}) {
  config.validate();
  const CoeffGrid coeffs = dct2_fast(resample_to_grid(mask, config.grid_size));
  return DctMaskVector(config.grid_size, zigzag_scan(coeffs, config.dims));
}

// K x K reconstruction before the final resize.
inline SpatialGrid decode_grid(const DctMaskVector& vector) {
  if (vector.grid_size() == 0) throw InvalidArgument("decode: empty mask vector");
  return idct2_fast(zigzag_unscan(vector.coeffs(), vector.grid_size()));
}

// Soft reconstruction at out_height x out_width; not clamped to [0, 1].
inline RealImage decode_soft(const DctMaskVector& vector, std::size_t out_height, std::size_t out_width) {
  if (out_height == 0 || out_width == 0) throw InvalidArgument("decode: output size must be positive");
  return resize_bilinear(to_image(decode_grid(vector)), out_height, out_width);
}

inline BinaryMask decode(const DctMaskVector& vector, std::size_t out_height, std::size_t out_width,
                         const CodecConfig& config = {}) {
  return binarize(decode_soft(vector, out_height, out_width), config.binarize_threshold);
}

// Binary-grid baseline: resize to K x K and threshold at 0.5.
inline BinaryMask grid_encode(const BinaryMask& mask, std::size_t grid_size) {
  check_mask(mask);
  if (grid_size == 0) throw InvalidArgument("grid_encode: grid size must be positive");
  return binarize(resize_bilinear(to_real(mask), grid_size, grid_size), 0.5);
}

inline BinaryMask grid_decode(const BinaryMask& grid, std::size_t out_height, std::size_t out_width) {
  check_mask(grid);
  if (out_height == 0 || out_width == 0) throw InvalidArgument("grid_decode: output size must be positive");
  return binarize(resize_bilinear(to_real(grid), out_height, out_width), 0.5);
}

}  // namespace dctmask
