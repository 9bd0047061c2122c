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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dctmask/error.hpp"
#include "dctmask/grid.hpp"
#include "dctmask/polygon.hpp"
#include "dctmask/rle.hpp"

// COCO-format instance annotations. Only the fields needed to rebuild
// instance masks are kept; everything else in the document is ignored.

namespace dctmask {

struct ImageInfo {
  std::size_t height = 0;
  std::size_t width = 0;
};

// RLE segmentation as stored in the file: raw counts or the compressed string.
struct RleSegmentation {
  std::size_t height = 0;
  std::size_t width = 0;
  std::variant<RleCounts, std::string> counts;
};

using Segmentation = std::variant<std::vector<Polygon>, RleSegmentation>;

struct InstanceAnnotation {
  std::int64_t id = 0;
  std::int64_t image_id = 0;
  std::size_t image_height = 0;
  std::size_t image_width = 0;
  std::int64_t category_id = 0;
  bool iscrowd = false;
  Segmentation segmentation;
};

struct AnnotationSet {
  std::map<std::int64_t, ImageInfo> images;
  std::vector<InstanceAnnotation> annotations;
  // Polygons with fewer than three vertices are dropped at parse time.
  std::size_t dropped_polygons = 0;

  std::size_t crowd_count() const {
    return static_cast<std::size_t>(
        std::count_if(annotations.begin(), annotations.end(), [](const auto& a) { return a.iscrowd; }));
  }
};

namespace detail {

inline std::size_t positive_size(const nlohmann::json& v, const char* what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
    throw ParseError(std::string("annotations: ") + what + " must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<std::int64_t>());
}

inline Segmentation parse_segmentation(const nlohmann::json& seg, InstanceAnnotation& ann, std::size_t& dropped) {
  if (seg.is_array()) {
    std::vector<Polygon> polys;
    for (const auto& p : seg) {
      if (!p.is_array()) throw ParseError("annotations: polygon must be an array of numbers");
      Polygon poly;
      poly.reserve(p.size());
      for (const auto& v : p) {
        if (!v.is_number()) throw ParseError("annotations: polygon coordinate is not a number");
        poly.push_back(v.get<double>());
      }
      if (poly.size() < 6 || poly.size() % 2 != 0) {
        ++dropped;
        continue;
      }
      polys.push_back(std::move(poly));
    }
    return polys;
  }
  if (!seg.is_object() || !seg.contains("counts") || !seg.contains("size")) {
    throw ParseError("annotations: segmentation is neither polygons nor RLE");
  }
  const auto& size = seg.at("size");
  if (!size.is_array() || size.size() != 2) throw ParseError("annotations: RLE size must be [height, width]");
  RleSegmentation rle;
  rle.height = positive_size(size[0], "RLE height");
  rle.width = positive_size(size[1], "RLE width");
  if (rle.height != ann.image_height || rle.width != ann.image_width) {
    throw IntegrityError("annotations: RLE size differs from its image", ann.id);
  }
  const auto& counts = seg.at("counts");
  if (counts.is_string()) {
    rle.counts = counts.get<std::string>();
  } else if (counts.is_array()) {
    RleCounts raw;
    std::uint64_t total = 0;
    for (const auto& c : counts) {
      if (!c.is_number_integer() || c.get<std::int64_t>() < 0 || c.get<std::int64_t>() > 0xffffffffLL) {
        throw ParseError("annotations: RLE count is not a non-negative 32-bit integer");
      }
      raw.push_back(static_cast<std::uint32_t>(c.get<std::int64_t>()));
      total += raw.back();
    }
    if (total != static_cast<std::uint64_t>(rle.height) * rle.width) {
      throw IntegrityError("annotations: RLE counts do not cover the image", ann.id);
    }
    rle.counts = std::move(raw);
  } else {
    throw ParseError("annotations: RLE counts must be a string or an integer array");
  }
  return rle;
}

}  // namespace detail

inline AnnotationSet parse_annotations(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document.begin(), document.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("annotations: malformed JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("annotations: top level must be an object", 0);
  if (!doc.contains("images") || !doc["images"].is_array()) {
    throw ParseError("annotations: missing \"images\" array");
  }
  if (!doc.contains("annotations") || !doc["annotations"].is_array()) {
    throw ParseError("annotations: missing \"annotations\" array");
  }

  AnnotationSet set;
  try {
    for (const auto& img : doc["images"]) {
      const auto id = img.at("id").get<std::int64_t>();
      set.images[id] = ImageInfo{detail::positive_size(img.at("height"), "image height"),
                                 detail::positive_size(img.at("width"), "image width")};
    }
    set.annotations.reserve(doc["annotations"].size());
    for (const auto& a : doc["annotations"]) {
      InstanceAnnotation ann;
      ann.id = a.value("id", std::int64_t{0});
      ann.image_id = a.at("image_id").get<std::int64_t>();
      ann.category_id = a.value("category_id", std::int64_t{0});
      ann.iscrowd = a.value("iscrowd", 0) != 0;
      const auto img = set.images.find(ann.image_id);
      if (img == set.images.end()) {
        throw IntegrityError("annotations: annotation " + std::to_string(ann.id) + " references unknown image",
                             ann.image_id);
      }
      ann.image_height = img->second.height;
      ann.image_width = img->second.width;
      ann.segmentation = detail::parse_segmentation(a.at("segmentation"), ann, set.dropped_polygons);
      set.annotations.push_back(std::move(ann));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("annotations: unexpected structure: ") + e.what());
  }
  return set;
}

inline AnnotationSet load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open annotation file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_annotations(buf.str());
}

// Full-image mask of one annotation.
inline BinaryMask annotation_mask(const InstanceAnnotation& ann) {
  if (const auto* polys = std::get_if<std::vector<Polygon>>(&ann.segmentation)) {
    return rasterize_polygons(*polys, ann.image_height, ann.image_width);
  }
  const auto& rle = std::get<RleSegmentation>(ann.segmentation);
  if (const auto* raw = std::get_if<RleCounts>(&rle.counts)) return decode_rle(*raw, rle.height, rle.width);
  return decode_compressed_rle(std::get<std::string>(rle.counts), rle.height, rle.width);
}

struct InstanceFilter {
  std::optional<std::size_t> min_area;                 // pixels in the full-image mask
  std::optional<std::vector<std::int64_t>> categories;  // unset keeps every category
  bool include_crowd = false;
};

// One instance cropped to the tight box of its set pixels.
struct InstanceCrop {
  const InstanceAnnotation* annotation = nullptr;
  Box box;  // in image coordinates
  BinaryMask mask;
};

// Lazily rasterizes the annotations that pass the filter, one at a time.
class InstanceStream {
 public:
  InstanceStream(const AnnotationSet& set, InstanceFilter filter) : set_(&set), filter_(std::move(filter)) {}

  std::optional<InstanceCrop> next() {
    while (index_ < set_->annotations.size()) {
      const InstanceAnnotation& ann = set_->annotations[index_++];
      if (!accepts(ann)) {
        ++filtered_;
        continue;
      }
      auto crop = extract(ann);
      if (!crop) {
        ++skipped_empty_;
        continue;
      }
      if (filter_.min_area && crop->mask.count() < *filter_.min_area) {
        ++filtered_;
        continue;
      }
      return crop;
    }
    return std::nullopt;
  }

  std::size_t skipped_empty() const noexcept { return skipped_empty_; }
  std::size_t filtered_out() const noexcept { return filtered_; }

 private:
  bool accepts(const InstanceAnnotation& ann) const {
    if (ann.iscrowd && !filter_.include_crowd) return false;
    if (filter_.categories) {
      const auto& cats = *filter_.categories;
      if (std::find(cats.begin(), cats.end(), ann.category_id) == cats.end()) return false;
    }
    return true;
  }

  static std::optional<InstanceCrop> extract(const InstanceAnnotation& ann) {
    BinaryMask window_mask;
    Box window{0, 0, ann.image_height, ann.image_width};
    if (const auto* polys = std::get_if<std::vector<Polygon>>(&ann.segmentation)) {
      window = polygon_extent(*polys, ann.image_height, ann.image_width);
      if (window.empty()) return std::nullopt;
      window_mask = rasterize_polygons(*polys, ann.image_height, ann.image_width, window);
    } else {
      window_mask = annotation_mask(ann);
    }
    const Box tight = tight_box(window_mask);
    if (tight.empty()) return std::nullopt;
    InstanceCrop out;
    out.annotation = &ann;
    out.mask = crop(window_mask, tight);
    out.box = Box{window.top + tight.top, window.left + tight.left, window.top + tight.bottom,
                  window.left + tight.right};
    return out;
  }

  const AnnotationSet* set_;
  InstanceFilter filter_;
  std::size_t index_ = 0;
  std::size_t skipped_empty_ = 0;
  std::size_t filtered_ = 0;
};

inline InstanceStream instance_masks(const AnnotationSet& set, InstanceFilter filter = {}) {
  return InstanceStream(set, std::move(filter));
}

}  // namespace dctmask
