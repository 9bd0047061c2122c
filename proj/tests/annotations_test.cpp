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

#include "dctmask/annotations.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dctmask {
namespace {

using nlohmann::json;

json base_doc() {
  return json{{"info", {{"description", "test"}}},
              {"images", json::array({{{"id", 1}, {"height", 10}, {"width", 10}, {"file_name", "a.jpg"}},
                                      {{"id", 7}, {"height", 4}, {"width", 6}}})},
              {"annotations", json::array()},
              {"categories", json::array({{{"id", 3}, {"name", "cat"}}})}};
}

json polygon_ann(std::int64_t id, std::int64_t image, std::vector<double> poly, std::int64_t cat = 3) {
  return json{{"id", id}, {"image_id", image}, {"category_id", cat}, {"iscrowd", 0},
              {"segmentation", json::array({poly})}, {"area", 1.0}, {"bbox", {0, 0, 1, 1}}};
}

TEST(ParseAnnotationsTest, MinimalPolygonDocument) {
  json doc = base_doc();
  doc["annotations"].push_back(polygon_ann(5, 1, {0, 0, 4, 0, 4, 3, 0, 3}));
  const AnnotationSet set = parse_annotations(doc.dump());
  ASSERT_EQ(set.annotations.size(), 1u);
  EXPECT_EQ(set.images.size(), 2u);
  const auto& a = set.annotations[0];
  EXPECT_EQ(a.id, 5);
  EXPECT_EQ(a.image_height, 10u);
  EXPECT_EQ(a.image_width, 10u);
  EXPECT_EQ(a.category_id, 3);
  EXPECT_FALSE(a.iscrowd);
  EXPECT_EQ(annotation_mask(a).count(), 12u);
}

TEST(ParseAnnotationsTest, UnknownImageIsIntegrityError) {
  json doc = base_doc();
  doc["annotations"].push_back(polygon_ann(5, 42, {0, 0, 4, 0, 4, 3}));
  try {
    parse_annotations(doc.dump());
    FAIL();
  } catch (const IntegrityError& e) {
    EXPECT_EQ(e.id(), 42);
  }
}

TEST(ParseAnnotationsTest, MalformedJsonReportsOffset) {
  const std::string text = R"({"images": [], "annotations": [} )";
  try {
    parse_annotations(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(e.offset(), ParseError::npos);
    EXPECT_LE(e.offset(), text.size());
  }
  EXPECT_THROW(parse_annotations(R"({"images": []})"), ParseError);
  EXPECT_THROW(parse_annotations(R"([1, 2])"), ParseError);
  EXPECT_THROW(parse_annotations(R"({"images": [{"id": 1, "height": -3, "width": 2}], "annotations": []})"),
               ParseError);
  EXPECT_THROW(parse_annotations(R"({"images": [{"id": 1, "height": 3, "width": 2}],
                                     "annotations": [{"image_id": 1, "segmentation": 5}]})"),
               ParseError);
}

TEST(ParseAnnotationsTest, RleSegmentations) {
  json doc = base_doc();
  doc["annotations"].push_back({{"id", 1}, {"image_id", 7}, {"iscrowd", 1}, {"category_id", 3},
                                {"segmentation", {{"size", {4, 6}}, {"counts", {0, 24}}}}});
  doc["annotations"].push_back({{"id", 2}, {"image_id", 7}, {"iscrowd", 0}, {"category_id", 3},
                                {"segmentation", {{"size", {4, 6}}, {"counts", "05c0"}}}});
  const AnnotationSet set = parse_annotations(doc.dump());
  EXPECT_EQ(set.crowd_count(), 1u);
  EXPECT_EQ(annotation_mask(set.annotations[0]), BinaryMask(4, 6, true));
  // 19 needs two groups ('c' = 0x13 | continuation, then '0').
  EXPECT_EQ(decode_counts_string("05c0"), (RleCounts{0, 5, 19}));
  EXPECT_EQ(annotation_mask(set.annotations[1]).count(), 5u);

  json bad_size = base_doc();
  bad_size["annotations"].push_back(
      {{"id", 9}, {"image_id", 7}, {"segmentation", {{"size", {5, 6}}, {"counts", {30}}}}});
  EXPECT_THROW(parse_annotations(bad_size.dump()), IntegrityError);

  json bad_sum = base_doc();
  bad_sum["annotations"].push_back(
      {{"id", 9}, {"image_id", 7}, {"segmentation", {{"size", {4, 6}}, {"counts", {3, 4}}}}});
  EXPECT_THROW(parse_annotations(bad_sum.dump()), IntegrityError);
}

TEST(ParseAnnotationsTest, DropsDegeneratePolygons) {
  json doc = base_doc();
  json ann = polygon_ann(5, 1, {0, 0, 4, 0, 4, 3, 0, 3});
  ann["segmentation"].push_back({1, 1, 2, 2});
  doc["annotations"].push_back(ann);
  const AnnotationSet set = parse_annotations(doc.dump());
  EXPECT_EQ(set.dropped_polygons, 1u);
  EXPECT_EQ(std::get<std::vector<Polygon>>(set.annotations[0].segmentation).size(), 1u);
}

TEST(InstanceMasksTest, FullImageRleCrop) {
  json doc = base_doc();
  doc["annotations"].push_back({{"id", 1}, {"image_id", 7}, {"category_id", 3},
                                {"segmentation", {{"size", {4, 6}}, {"counts", {0, 24}}}}});
  const AnnotationSet set = parse_annotations(doc.dump());
  auto stream = instance_masks(set);
  const auto first = stream.next();
  ASSERT_TRUE(first);
  EXPECT_EQ(first->mask, BinaryMask(4, 6, true));
  EXPECT_EQ(first->box, (Box{0, 0, 4, 6}));
  EXPECT_FALSE(stream.next());
}

TEST(InstanceMasksTest, Filters) {
  json doc = base_doc();
  doc["annotations"].push_back(polygon_ann(1, 1, {0, 0, 4, 0, 4, 3, 0, 3}, 3));
  doc["annotations"].push_back(polygon_ann(2, 1, {5, 5, 9, 5, 9, 9}, 4));
  doc["annotations"].push_back(polygon_ann(3, 1, {2, 2, 2.2, 2, 2.2, 2.2}, 3));  // covers no pixel centre
  json crowd = polygon_ann(4, 1, {0, 0, 10, 0, 10, 10, 0, 10}, 3);
  crowd["iscrowd"] = 1;
  doc["annotations"].push_back(crowd);
  const AnnotationSet set = parse_annotations(doc.dump());

  auto count = [&](InstanceFilter f, std::size_t* skipped = nullptr) {
    auto s = instance_masks(set, std::move(f));
    std::size_t n = 0;
    while (s.next()) ++n;
    if (skipped) *skipped = s.skipped_empty();
    return n;
  };
  std::size_t skipped = 0;
  EXPECT_EQ(count({}, &skipped), 2u);
  EXPECT_EQ(skipped, 1u);
  InstanceFilter crowd_too;
  crowd_too.include_crowd = true;
  EXPECT_EQ(count(crowd_too), 3u);
  InstanceFilter no_categories;
  no_categories.categories = std::vector<std::int64_t>{};
  EXPECT_EQ(count(no_categories), 0u);
  InstanceFilter only_four;
  only_four.categories = std::vector<std::int64_t>{4};
  EXPECT_EQ(count(only_four), 1u);
  InstanceFilter large;
  large.min_area = 11;
  EXPECT_EQ(count(large), 1u);
}

TEST(InstanceMasksTest, CropsAreTightAndMatchFullRaster) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-5.0, 70.0);
  json doc{{"images", json::array({{{"id", 1}, {"height", 48}, {"width", 64}}})}, {"annotations", json::array()}};
  for (int i = 0; i < 100; ++i) {
    std::vector<double> poly;
    for (int v = 0; v < 8; ++v) poly.push_back(coord(rng));
    doc["annotations"].push_back(polygon_ann(i, 1, poly));
  }
  const AnnotationSet set = parse_annotations(doc.dump());
  auto stream = instance_masks(set);
  std::size_t seen = 0;
  while (auto item = stream.next()) {
    ++seen;
    const BinaryMask& m = item->mask;
    auto row_has = [&](std::size_t r) {
      for (std::size_t c = 0; c < m.width(); ++c)
        if (m(r, c)) return true;
      return false;
    };
    auto col_has = [&](std::size_t c) {
      for (std::size_t r = 0; r < m.height(); ++r)
        if (m(r, c)) return true;
      return false;
    };
    EXPECT_TRUE(row_has(0));
    EXPECT_TRUE(row_has(m.height() - 1));
    EXPECT_TRUE(col_has(0));
    EXPECT_TRUE(col_has(m.width() - 1));
    const BinaryMask full = annotation_mask(*item->annotation);
    EXPECT_EQ(item->box, tight_box(full));
    EXPECT_EQ(m, crop(full, tight_box(full)));
  }
  EXPECT_EQ(seen + stream.skipped_empty(), 100u);
}

}  // namespace
}  // namespace dctmask
