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

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace dctmask::detail {

using Complex = std::complex<double>;

// Plain product; operator* on std::complex adds an Inf/NaN recovery path.
inline Complex cmul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Complex DFT of fixed length. Powers of two use an iterative radix-2
// transform; every other length goes through Bluestein's chirp-z
// convolution on a padded power-of-two transform, so all lengths cost
// O(n log n).
class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n) {
    if (n_ <= 1) return;
    if (std::has_single_bit(n_)) {
      init_radix2();
    } else {
      init_bluestein();
    }
  }

  std::size_t size() const noexcept { return n_; }

  // X[k] = sum_j x[j] exp(-2 pi i j k / n), in place.
  void forward(std::span<Complex> data) const {
    if (n_ <= 1) return;
    if (chirp_.empty()) {
      radix2(data);
    } else {
      bluestein(data);
    }
  }

  // Unnormalized inverse: x[j] = sum_k X[k] exp(+2 pi i j k / n).
  void backward(std::span<Complex> data) const {
    for (auto& z : data) z = std::conj(z);
    forward(data);
    for (auto& z : data) z = std::conj(z);
  }

 private:
  void init_radix2() {
    const int bits = std::countr_zero(n_);
    bitrev_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::size_t r = 0;
      for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      bitrev_[i] = r;
    }
    twiddle_.resize(n_ / 2);
    for (std::size_t k = 0; k < n_ / 2; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
      twiddle_[k] = Complex(std::cos(angle), std::sin(angle));
    }
  }

  void radix2(std::span<Complex> data) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t step = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t j = 0; j < half; ++j) {
          const Complex t = cmul(twiddle_[j * step], data[start + j + half]);
          data[start + j + half] = data[start + j] - t;
          data[start + j] += t;
        }
      }
    }
  }

  void init_bluestein() {
    // chirp[k] = exp(-i pi k^2 / n); k^2 is reduced mod 2n to keep the
    // angle argument small and exact.
    chirp_.resize(n_);
    const std::size_t period = 2 * n_;
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t k2 = (k * k) % period;
      const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n_);
      chirp_[k] = Complex(std::cos(angle), std::sin(angle));
    }
    const std::size_t m = std::bit_ceil(2 * n_ - 1);
    inner_ = std::make_unique<Fft>(m);
    filter_.assign(m, Complex{});
    filter_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) {
      filter_[k] = std::conj(chirp_[k]);
      filter_[m - k] = std::conj(chirp_[k]);
    }
    inner_->forward(filter_);
  }

  void bluestein(std::span<Complex> data) const {
    const std::size_t m = inner_->size();
    std::vector<Complex> work(m);
    for (std::size_t k = 0; k < n_; ++k) work[k] = cmul(data[k], chirp_[k]);
    inner_->forward(work);
    for (std::size_t k = 0; k < m; ++k) work[k] = cmul(work[k], filter_[k]);
    inner_->backward(work);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n_; ++k) data[k] = cmul(work[k], chirp_[k]) * scale;
  }

  std::size_t n_;
  std::vector<std::size_t> bitrev_;
  std::vector<Complex> twiddle_;
  std::vector<Complex> chirp_;
  std::vector<Complex> filter_;
  std::unique_ptr<Fft> inner_;
};

}  // namespace dctmask::detail
