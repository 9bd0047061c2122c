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

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "dctmask/error.hpp"
#include "dctmask/fft.hpp"
#include "dctmask/grid.hpp"

// Orthonormal 2D DCT-II and its inverse (DCT-III) with the scaling
//
//   F(u,v) = (2/K) C(u) C(v) sum_x sum_y f(x,y) cos((2x+1)u pi / 2K) cos((2y+1)v pi / 2K)
//
// where C(0) = 1/sqrt(2) and C(w) = 1 otherwise. Both the naive and the fast
// variants factor into a row pass followed by a column pass.

namespace dctmask {

namespace detail {

inline void check_transform_input(std::size_t size, bool finite) {
  if (size == 0) throw InvalidArgument("transform input must be a non-empty square grid");
  if (!finite) throw InvalidArgument("transform input contains non-finite values");
}

// sqrt(2/K) * C(k): the per-axis factor of the orthonormal basis.
inline double basis_scale(std::size_t k, std::size_t size) {
  const double s = std::sqrt(2.0 / static_cast<double>(size));
  return k == 0 ? s / std::numbers::sqrt2 : s;
}

// cos((2n+1) k pi / 2K) with the integer phase reduced mod 4K first.
inline double basis_cos(std::size_t k, std::size_t n, std::size_t size) {
  const std::size_t phase = ((2 * n + 1) * k) % (4 * size);
  return std::cos(std::numbers::pi * static_cast<double>(phase) / static_cast<double>(2 * size));
}

// Row-major table: basis[k * K + n] = basis_scale(k) * basis_cos(k, n).
inline std::vector<double> basis_table(std::size_t size) {
  std::vector<double> table(size * size);
  for (std::size_t k = 0; k < size; ++k) {
    const double s = basis_scale(k, size);
    for (std::size_t n = 0; n < size; ++n) table[k * size + n] = s * basis_cos(k, n, size);
  }
  return table;
}

// One-dimensional orthonormal DCT-II / DCT-III of length K via a single
// length-K complex FFT (Makhoul's even/odd reordering). Rows are handled
// in pairs packed as the real and imaginary parts of one complex input.
class DctPlan {
 public:
  explicit DctPlan(std::size_t size)
      : size_(size), fft_(size), rotation_(size), scale_(size), inv_scale_(size), work_(size) {
    for (std::size_t k = 0; k < size; ++k) {
      const double angle = -std::numbers::pi * static_cast<double>(k) / static_cast<double>(2 * size);
      rotation_[k] = Complex(std::cos(angle), std::sin(angle));
      scale_[k] = basis_scale(k, size);
      inv_scale_[k] = 1.0 / scale_[k];
    }
  }

  std::size_t size() const noexcept { return size_; }

  // DCT-II of rows x and y; outputs are written with the given stride.
  void forward_pair(const double* x, const double* y, double* ox, double* oy, std::size_t stride) {
    const std::size_t n = size_;
    Complex* w = work_.data();
    for (std::size_t j = 0; 2 * j < n; ++j) w[j] = Complex(x[2 * j], y[2 * j]);
    for (std::size_t j = 0; 2 * j + 1 < n; ++j) w[n - 1 - j] = Complex(x[2 * j + 1], y[2 * j + 1]);
    fft_.forward(work_);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex z = w[k];
      const Complex m = std::conj(w[k == 0 ? 0 : n - k]);
      const Complex a = 0.5 * (z + m);
      const Complex d = z - m;
      const Complex b(0.5 * d.imag(), -0.5 * d.real());
      const Complex r = rotation_[k];
      ox[k * stride] = scale_[k] * (a.real() * r.real() - a.imag() * r.imag());
      oy[k * stride] = scale_[k] * (b.real() * r.real() - b.imag() * r.imag());
    }
  }

  // DCT-III (inverse) of rows x and y; outputs are written with the given stride.
  void inverse_pair(const double* x, const double* y, double* ox, double* oy, std::size_t stride) {
    const std::size_t n = size_;
    Complex* w = work_.data();
    // V[k] = e^{i pi k / 2K} (X[k] - i X[K-k]) on the unscaled coefficients.
    w[0] = Complex(x[0] * inv_scale_[0], y[0] * inv_scale_[0]);
    for (std::size_t k = 1; k < n; ++k) {
      const Complex r = std::conj(rotation_[k]);
      const Complex a = cmul(Complex(x[k] * inv_scale_[k], -x[n - k] * inv_scale_[n - k]), r);
      const Complex b = cmul(Complex(y[k] * inv_scale_[k], -y[n - k] * inv_scale_[n - k]), r);
      w[k] = Complex(a.real() - b.imag(), a.imag() + b.real());
    }
    fft_.backward(work_);
    const double norm = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; 2 * j < n; ++j) {
      ox[2 * j * stride] = w[j].real() * norm;
      oy[2 * j * stride] = w[j].imag() * norm;
    }
    for (std::size_t j = 0; 2 * j + 1 < n; ++j) {
      ox[(2 * j + 1) * stride] = w[n - 1 - j].real() * norm;
      oy[(2 * j + 1) * stride] = w[n - 1 - j].imag() * norm;
    }
  }

 private:
  std::size_t size_;
  Fft fft_;
  std::vector<Complex> rotation_;
  std::vector<double> scale_;
  std::vector<double> inv_scale_;
  std::vector<Complex> work_;
};

// Plans hold scratch space, so each thread keeps its own.
inline DctPlan& plan_for(std::size_t size) {
  thread_local std::map<std::size_t, std::unique_ptr<DctPlan>> cache;
  auto& slot = cache[size];
  if (!slot) slot = std::make_unique<DctPlan>(size);
  return *slot;
}

// Transforms every row of the row-major K x K `in` and stores the result
// transposed, so two calls give the 2D transform.
template <bool kInverse>
void transform_rows_transposed(DctPlan& plan, const double* in, double* out) {
  const std::size_t k = plan.size();
  auto run = [&](const double* x, const double* y, double* ox, double* oy) {
    if constexpr (kInverse) {
      plan.inverse_pair(x, y, ox, oy, k);
    } else {
      plan.forward_pair(x, y, ox, oy, k);
    }
  };
  std::size_t r = 0;
  for (; r + 1 < k; r += 2) run(in + r * k, in + (r + 1) * k, out + r, out + r + 1);
  if (r < k) {
    const std::vector<double> zeros(k, 0.0);
    std::vector<double> discard(k * k);
    run(in + r * k, zeros.data(), out + r, discard.data());
  }
}

template <bool kInverse>
std::vector<double> separable_fast(std::span<const double> in, std::size_t k) {
  DctPlan& plan = plan_for(k);
  std::vector<double> tmp(k * k);
  std::vector<double> out(k * k);
  transform_rows_transposed<kInverse>(plan, in.data(), tmp.data());
  transform_rows_transposed<kInverse>(plan, tmp.data(), out.data());
  return out;
}

}  // namespace detail

// Direct evaluation of the transform sums; O(K^3) overall. Used as the
// reference for the fast path.
inline CoeffGrid dct2_naive(const SpatialGrid& grid) {
  detail::check_transform_input(grid.size(), grid.all_finite());
  const std::size_t k = grid.size();
  const std::vector<double> basis = detail::basis_table(k);
  // tmp(x, v) = sum_y f(x, y) b_v(y)
  std::vector<double> tmp(k * k, 0.0);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t v = 0; v < k; ++v) {
      double acc = 0.0;
      for (std::size_t y = 0; y < k; ++y) acc += grid(x, y) * basis[v * k + y];
      tmp[x * k + v] = acc;
    }
  }
  // F(u, v) = sum_x b_u(x) tmp(x, v)
  CoeffGrid out(k);
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = 0; v < k; ++v) {
      double acc = 0.0;
      for (std::size_t x = 0; x < k; ++x) acc += basis[u * k + x] * tmp[x * k + v];
      out(u, v) = acc;
    }
  }
  return out;
}

inline SpatialGrid idct2_naive(const CoeffGrid& coeffs) {
  detail::check_transform_input(coeffs.size(), coeffs.all_finite());
  const std::size_t k = coeffs.size();
  const std::vector<double> basis = detail::basis_table(k);
  // tmp(u, y) = sum_v F(u, v) b_v(y)
  std::vector<double> tmp(k * k, 0.0);
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t y = 0; y < k; ++y) {
      double acc = 0.0;
      for (std::size_t v = 0; v < k; ++v) acc += coeffs(u, v) * basis[v * k + y];
      tmp[u * k + y] = acc;
    }
  }
  // f(x, y) = sum_u b_u(x) tmp(u, y)
  SpatialGrid out(k);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      double acc = 0.0;
      for (std::size_t u = 0; u < k; ++u) acc += basis[u * k + x] * tmp[u * k + y];
      out(x, y) = acc;
    }
  }
  return out;
}

// O(K^2 log K) for every K >= 1.
inline CoeffGrid dct2_fast(const SpatialGrid& grid) {
  detail::check_transform_input(grid.size(), grid.all_finite());
  return CoeffGrid(grid.size(), detail::separable_fast<false>(grid.values(), grid.size()));
}

inline SpatialGrid idct2_fast(const CoeffGrid& coeffs) {
  detail::check_transform_input(coeffs.size(), coeffs.all_finite());
  return SpatialGrid(coeffs.size(), detail::separable_fast<true>(coeffs.values(), coeffs.size()));
}

struct GridIndex {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

struct ZigzagOrder {
  std::size_t size = 0;
  std::vector<GridIndex> order;
};

namespace detail {

// Visits the first `limit` cells in JPEG zigzag order: anti-diagonals of
// constant row+col, odd diagonals walked downwards (row increasing), even
// ones upwards, starting (0,0), (0,1), (1,0), ...
template <typename Visit>
void walk_zigzag(std::size_t size, std::size_t limit, Visit&& visit) {
  std::size_t emitted = 0;
  for (std::size_t diag = 0; diag + 1 < 2 * size && emitted < limit; ++diag) {
    const std::size_t lo = diag < size ? 0 : diag - (size - 1);
    const std::size_t hi = diag < size ? diag : size - 1;
    for (std::size_t i = 0; i <= hi - lo && emitted < limit; ++i, ++emitted) {
      const std::size_t row = (diag % 2 == 1) ? lo + i : hi - i;
      visit(GridIndex{row, diag - row});
    }
  }
}

}  // namespace detail

inline ZigzagOrder zigzag_order(std::size_t size) {
  if (size == 0) throw InvalidArgument("zigzag order needs a positive grid size");
  ZigzagOrder z{size, {}};
  z.order.reserve(size * size);
  detail::walk_zigzag(size, size * size, [&](GridIndex idx) { z.order.push_back(idx); });
  return z;
}

// First `count` coefficients in zigzag order.
inline std::vector<double> zigzag_scan(const CoeffGrid& coeffs, std::size_t count) {
  const std::size_t k = coeffs.size();
  if (count == 0 || count > k * k) {
    throw InvalidArgument("zigzag_scan: N=" + std::to_string(count) + " outside [1, " +
                          std::to_string(k * k) + "]");
  }
  std::vector<double> out;
  out.reserve(count);
  detail::walk_zigzag(k, count, [&](GridIndex idx) { out.push_back(coeffs(idx.row, idx.col)); });
  return out;
}

// Inverse of zigzag_scan; positions past the vector are zero.
inline CoeffGrid zigzag_unscan(std::span<const double> vector, std::size_t size) {
  if (size == 0) throw InvalidArgument("zigzag_unscan needs a positive grid size");
  if (vector.size() > size * size) {
    throw InvalidArgument("zigzag_unscan: " + std::to_string(vector.size()) +
                          " coefficients do not fit a " + std::to_string(size) + "x" +
                          std::to_string(size) + " grid");
  }
  CoeffGrid out(size);
  std::size_t i = 0;
  detail::walk_zigzag(size, vector.size(), [&](GridIndex idx) { out(idx.row, idx.col) = vector[i++]; });
  return out;
}

}  // namespace dctmask
