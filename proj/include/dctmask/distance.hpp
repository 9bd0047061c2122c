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

namespace dctmask {

enum class Reduction { kSum, kMean };

namespace detail {

inline void check_same_length(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("distance: length mismatch " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
}

inline double reduce(double sum, std::size_t n, Reduction reduction) {
  if (reduction == Reduction::kSum || n == 0) return sum;
  return sum / static_cast<double>(n);
}

}  // namespace detail

// Regression distance between a predicted and a target coefficient vector.
inline double l1_distance(std::span<const double> a, std::span<const double> b,
                          Reduction reduction = Reduction::kSum) {
  detail::check_same_length(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return detail::reduce(sum, a.size(), reduction);
}

inline double smooth_l1_element(double d, double beta) {
  const double ad = std::abs(d);
  return ad < beta ? 0.5 * d * d / beta : ad - 0.5 * beta;
}

inline double smooth_l1_distance(std::span<const double> a, std::span<const double> b,
                                 double beta = 1.0, Reduction reduction = Reduction::kSum) {
  detail::check_same_length(a, b);
  if (!(beta > 0.0)) throw InvalidArgument("smooth_l1_distance: beta must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += smooth_l1_element(a[i] - b[i], beta);
  return detail::reduce(sum, a.size(), reduction);
}

}  // namespace dctmask
