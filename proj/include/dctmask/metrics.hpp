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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dctmask/codec.hpp"
#include "dctmask/error.hpp"
#include "dctmask/grid.hpp"
#include "dctmask/parallel.hpp"
#include "dctmask/transform.hpp"

namespace dctmask {

namespace detail {

inline void check_same_shape(const BinaryMask& a, const BinaryMask& b, const char* what) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw InvalidArgument(std::string(what) + ": mask shapes differ (" + std::to_string(a.height()) + "x" +
                          std::to_string(a.width()) + " vs " + std::to_string(b.height()) + "x" +
                          std::to_string(b.width()) + ")");
  }
}

}  // namespace detail

// |a & b| / |a | b|; two empty masks score 1.
inline double iou(const BinaryMask& a, const BinaryMask& b) {
  detail::check_same_shape(a, b, "iou");
  std::size_t inter = 0;
  std::size_t uni = 0;
  const auto ab = a.bits();
  const auto bb = b.bits();
  for (std::size_t i = 0; i < ab.size(); ++i) {
    inter += ab[i] & bb[i];
    uni += ab[i] | bb[i];
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

// Pixels where the two masks disagree.
inline BinaryMask error_map(const BinaryMask& gt, const BinaryMask& rec) {
  detail::check_same_shape(gt, rec, "error_map");
  std::vector<std::uint8_t> bits(gt.pixel_count());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = gt.bits()[i] ^ rec.bits()[i];
  return BinaryMask(gt.height(), gt.width(), std::move(bits));
}

enum class Method { kDct, kGrid };

inline std::string to_string(Method m) { return m == Method::kDct ? "dct" : "grid"; }

// One representation under test: "dct:128:300" or "grid:28:-".
struct RepresentationSpec {
  Method method = Method::kDct;
  std::size_t grid_size = 128;
  std::optional<std::size_t> dims = 300;

  std::string to_string() const {
    return dctmask::to_string(method) + ":" + std::to_string(grid_size) + ":" +
           (dims ? std::to_string(*dims) : std::string("-"));
  }

  void validate() const {
    if (grid_size == 0) throw InvalidArgument("representation: grid size must be positive");
    if (method == Method::kDct) {
      if (!dims) throw InvalidArgument("representation: dct needs a dimension");
      if (*dims == 0 || *dims > grid_size * grid_size) {
        throw InvalidArgument("representation: N=" + std::to_string(*dims) + " outside [1, " +
                              std::to_string(grid_size * grid_size) + "]");
      }
    } else if (dims) {
      throw InvalidArgument("representation: grid takes no dimension (use '-')");
    }
  }

  friend bool operator==(const RepresentationSpec&, const RepresentationSpec&) = default;
};

inline RepresentationSpec parse_representation(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw InvalidArgument("representation '" + std::string(text) + "' is not method:K:N");
  }
  const std::string_view method = text.substr(0, first);
  const std::string_view k = text.substr(first + 1, second - first - 1);
  const std::string_view n = text.substr(second + 1);
  auto parse_size = [&](std::string_view s) -> std::size_t {
    if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw InvalidArgument("representation '" + std::string(text) + "': bad number '" + std::string(s) + "'");
    }
    return static_cast<std::size_t>(std::stoul(std::string(s)));
  };
  RepresentationSpec spec;
  if (method == "dct") {
    spec.method = Method::kDct;
  } else if (method == "grid") {
    spec.method = Method::kGrid;
  } else {
    throw InvalidArgument("representation '" + std::string(text) + "': unknown method");
  }
  spec.grid_size = parse_size(k);
  spec.dims = (n == "-" || n == "none") ? std::nullopt : std::optional<std::size_t>(parse_size(n));
  spec.validate();
  return spec;
}

// Codec round trip at the mask's own size.
inline BinaryMask reconstruct(const BinaryMask& mask, const RepresentationSpec& spec,
                              const CodecConfig& base = {}) {
  spec.validate();
  if (spec.method == Method::kGrid) {
    return grid_decode(grid_encode(mask, spec.grid_size), mask.height(), mask.width());
  }
  CodecConfig config = base;
  config.grid_size = spec.grid_size;
  config.dims = *spec.dims;
  return decode(encode(mask, config), mask.height(), mask.width(), config);
}

inline constexpr std::size_t kHistogramBins = 20;

struct RepQualityReport {
  RepresentationSpec spec;
  std::size_t instance_count = 0;
  double mean_iou = 0.0;
  std::array<std::size_t, kHistogramBins> iou_histogram{};  // equal bins over [0, 1], last closed
};

inline std::size_t histogram_bin(double value) {
  const auto bin = static_cast<std::size_t>(std::floor(value * static_cast<double>(kHistogramBins)));
  return std::min(bin, kHistogramBins - 1);
}

// Accumulates reconstruction IoU for several representations over one pass
// of a mask stream. Specs sharing a grid size share one forward DCT per
// mask. Per-instance scores are stored by arrival index, so reports do not
// depend on the thread count.
class RepresentationEvaluator {
 public:
  RepresentationEvaluator(std::vector<RepresentationSpec> specs, CodecConfig config = {})
      : specs_(std::move(specs)), config_(config), ious_(specs_.size()) {
    if (specs_.empty()) throw InvalidArgument("evaluator: no representations requested");
    for (const auto& s : specs_) s.validate();
    if (!(config_.binarize_threshold > 0.0 && config_.binarize_threshold < 1.0)) {
      throw InvalidArgument("evaluator: binarize threshold must lie in (0, 1)");
    }
  }

  const std::vector<RepresentationSpec>& specs() const noexcept { return specs_; }

  // IoU of `mask` under every spec, in spec order.
  std::vector<double> score(const BinaryMask& mask) const {
    check_mask(mask);
    std::vector<double> out(specs_.size());
    std::map<std::size_t, CoeffGrid> spectra;
    for (std::size_t i = 0; i < specs_.size(); ++i) {
      const auto& spec = specs_[i];
      if (spec.method == Method::kGrid) {
        out[i] = iou(grid_decode(grid_encode(mask, spec.grid_size), mask.height(), mask.width()), mask);
        continue;
      }
      auto it = spectra.find(spec.grid_size);
      if (it == spectra.end()) {
        it = spectra.emplace(spec.grid_size, dct2_fast(resample_to_grid(mask, spec.grid_size))).first;
      }
      const DctMaskVector vec(spec.grid_size, zigzag_scan(it->second, *spec.dims));
      out[i] = iou(decode(vec, mask.height(), mask.width(), config_), mask);
    }
    return out;
  }

  void add(const BinaryMask& mask) { append(score(mask)); }

  void add_batch(std::span<const BinaryMask> masks, std::size_t threads = 1) {
    std::vector<std::vector<double>> scores(masks.size());
    detail::parallel_for(masks.size(), threads, [&](std::size_t i) { scores[i] = score(masks[i]); });
    for (auto& s : scores) append(s);
  }

  std::size_t instance_count() const noexcept { return ious_.front().size(); }

  std::span<const double> ious(std::size_t spec_index) const { return ious_.at(spec_index); }

  std::vector<RepQualityReport> reports() const {
    std::vector<RepQualityReport> out;
    for (std::size_t i = 0; i < specs_.size(); ++i) {
      RepQualityReport r;
      r.spec = specs_[i];
      r.instance_count = ious_[i].size();
      double sum = 0.0;
      for (double v : ious_[i]) {
        sum += v;
        ++r.iou_histogram[histogram_bin(v)];
      }
      r.mean_iou = r.instance_count ? sum / static_cast<double>(r.instance_count) : 0.0;
      out.push_back(r);
    }
    return out;
  }

 private:
  void append(const std::vector<double>& scores) {
    for (std::size_t i = 0; i < scores.size(); ++i) ious_[i].push_back(scores[i]);
  }

  std::vector<RepresentationSpec> specs_;
  CodecConfig config_;
  std::vector<std::vector<double>> ious_;
};

inline RepQualityReport evaluate_representation(std::span<const BinaryMask> masks, const RepresentationSpec& spec,
                                                const CodecConfig& config = {}, std::size_t threads = 1) {
  if (masks.empty()) throw InvalidArgument("evaluate_representation: empty mask stream");
  RepresentationEvaluator evaluator({spec}, config);
  evaluator.add_batch(masks, threads);
  return evaluator.reports().front();
}

// Per-dimension statistics of DCT mask vectors.
struct CoeffStats {
  std::size_t dims = 0;
  std::size_t instance_count = 0;
  std::vector<double> mean;
  std::vector<double> variance;  // population variance
};

// Welford accumulation over encoded vectors; feed order fixes the result.
class CoeffStatsAccumulator {
 public:
  explicit CoeffStatsAccumulator(const CodecConfig& config) : config_(config) {
    config_.validate();
    mean_.assign(config_.dims, 0.0);
    m2_.assign(config_.dims, 0.0);
  }

  void add(const BinaryMask& mask) { add_vector(encode(mask, config_)); }

  void add_vector(const DctMaskVector& v) {
    if (v.dims() != mean_.size()) throw InvalidArgument("coefficient stats: dimension mismatch");
    ++count_;
    const double n = static_cast<double>(count_);
    for (std::size_t i = 0; i < mean_.size(); ++i) {
      const double x = v.coeffs()[i];
      const double delta = x - mean_[i];
      mean_[i] += delta / n;
      m2_[i] += delta * (x - mean_[i]);
    }
  }

  void add_batch(std::span<const BinaryMask> masks, std::size_t threads = 1) {
    std::vector<DctMaskVector> vecs(masks.size());
    detail::parallel_for(masks.size(), threads, [&](std::size_t i) { vecs[i] = encode(masks[i], config_); });
    for (const auto& v : vecs) add_vector(v);
  }

  std::size_t instance_count() const noexcept { return count_; }

  CoeffStats result() const {
    if (count_ == 0) throw InvalidArgument("coefficient stats: empty mask stream");
    CoeffStats s{mean_.size(), count_, mean_, m2_};
    for (auto& v : s.variance) v = std::max(0.0, v / static_cast<double>(count_));
    return s;
  }

 private:
  CodecConfig config_;
  std::size_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

inline CoeffStats coefficient_stats(std::span<const BinaryMask> masks, const CodecConfig& config = {},
                                    std::size_t threads = 1) {
  if (masks.empty()) throw InvalidArgument("coefficient_stats: empty mask stream");
  CoeffStatsAccumulator acc(config);
  acc.add_batch(masks, threads);
  return acc.result();
}

}  // namespace dctmask
