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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dctmask/codec.hpp"
#include "dctmask/distance.hpp"
#include "dctmask/error.hpp"
#include "dctmask/grid.hpp"

// Buffer-level entry points for foreign callers (e.g. a Python extension).
// Masks come in as row-major 8-bit buffers, vectors go out as one row-major
// double matrix. All numerics are the single-mask functions above.

namespace dctmask {

struct MaskView {
  std::size_t height = 0;
  std::size_t width = 0;
  std::span<const std::uint8_t> bits;
};

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t r) const { return std::span<const double>(values).subspan(r * cols, cols); }
};

inline BinaryMask to_mask(const MaskView& view) {
  if (view.bits.size() != view.height * view.width) {
    throw InvalidArgument("batch: mask buffer holds " + std::to_string(view.bits.size()) + " bytes, shape is " +
                          std::to_string(view.height) + "x" + std::to_string(view.width));
  }
  return BinaryMask(view.height, view.width, std::vector<std::uint8_t>(view.bits.begin(), view.bits.end()));
}

inline Matrix encode_batch(std::span<const MaskView> masks, const CodecConfig& config = {}) {
  config.validate();
  Matrix out{masks.size(), config.dims, {}};
  out.values.reserve(masks.size() * config.dims);
  for (const auto& m : masks) {
    const DctMaskVector v = encode(to_mask(m), config);
    out.values.insert(out.values.end(), v.coeffs().begin(), v.coeffs().end());
  }
  return out;
}

struct DecodedBatch {
  std::vector<BinaryMask> masks;
  std::vector<RealImage> soft;  // filled only when requested
};

// sizes[i] = (height, width) of row i's output.
inline DecodedBatch decode_batch(const Matrix& vectors, std::size_t grid_size,
                                 std::span<const std::pair<std::size_t, std::size_t>> sizes,
                                 double threshold = 0.5, bool keep_soft = false) {
  if (sizes.size() != vectors.rows) throw InvalidArgument("batch: one output size per row required");
  if (vectors.values.size() != vectors.rows * vectors.cols) throw InvalidArgument("batch: matrix buffer size mismatch");
  CodecConfig config;
  config.grid_size = grid_size;
  config.dims = vectors.cols;
  config.binarize_threshold = threshold;
  if (vectors.rows > 0) config.validate();
  DecodedBatch out;
  for (std::size_t r = 0; r < vectors.rows; ++r) {
    const auto row = vectors.row(r);
    const DctMaskVector v(grid_size, std::vector<double>(row.begin(), row.end()));
    RealImage soft = decode_soft(v, sizes[r].first, sizes[r].second);
    out.masks.push_back(binarize(soft, threshold));
    if (keep_soft) out.soft.push_back(std::move(soft));
  }
  return out;
}

namespace detail {

inline void check_matrix_pair(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw InvalidArgument("batch: matrix shapes differ");
  if (a.values.size() != a.rows * a.cols || b.values.size() != b.rows * b.cols) {
    throw InvalidArgument("batch: matrix buffer size mismatch");
  }
}

}  // namespace detail

// Row-wise distances.
inline std::vector<double> l1_batch(const Matrix& pred, const Matrix& target, Reduction reduction = Reduction::kSum) {
  detail::check_matrix_pair(pred, target);
  std::vector<double> out(pred.rows);
  for (std::size_t r = 0; r < pred.rows; ++r) out[r] = l1_distance(pred.row(r), target.row(r), reduction);
  return out;
}

inline std::vector<double> smooth_l1_batch(const Matrix& pred, const Matrix& target, double beta = 1.0,
                                           Reduction reduction = Reduction::kSum) {
  detail::check_matrix_pair(pred, target);
  std::vector<double> out(pred.rows);
  for (std::size_t r = 0; r < pred.rows; ++r) {
    out[r] = smooth_l1_distance(pred.row(r), target.row(r), beta, reduction);
  }
  return out;
}

}  // namespace dctmask
