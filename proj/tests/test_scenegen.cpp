// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <json.hpp>

#include "test_util.hpp"
#include "vecmap/scenegen.hpp"

using namespace vecmap;

namespace {

bool value_equal(const GroundTruthSet& a, const GroundTruthSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].category != b[i].category || a[i].closed() != b[i].closed() ||
        a[i].shape.size() != b[i].shape.size()) {
      return false;
    }
    for (std::size_t j = 0; j < a[i].shape.size(); ++j) {
      if (!(a[i].shape[j] == b[i].shape[j])) return false;
    }
  }
  return true;
}

// Proper segment intersection (excluding shared endpoints within eps).
bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

int count_category(const GroundTruthSet& scene, ElementCategory cat) {
  int n = 0;
  for (const MapElement& e : scene) n += e.category == cat ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("generate_scene is a pure function of the scene spec") {
  const SceneSpec spec{7, 1, 3, 0.005, 0.02, 2, 0.2};
  const PerceptionRange range = PerceptionRange::regular();
  const GroundTruthSet a = generate_scene(spec, range);
  const GroundTruthSet b = generate_scene(spec, range);
  CHECK(value_equal(a, b));
  CHECK_FALSE(a.empty());

  SceneSpec other = spec;
  other.seed = 8;
  CHECK_FALSE(value_equal(a, generate_scene(other, range)));
}

TEST_CASE("one straight road with two lanes yields 2 boundaries + 1 divider") {
  const SceneSpec spec{42, 1, 2, 0.0, 0.0, 0, 0.0};
  const GroundTruthSet scene = generate_scene(spec, PerceptionRange::regular());
  CHECK(count_category(scene, ElementCategory::kBoundary) == 2);
  CHECK(count_category(scene, ElementCategory::kDivider) == 1);
  CHECK(count_category(scene, ElementCategory::kPedCrossing) == 0);
}

TEST_CASE("an empty spec yields an empty scene") {
  const SceneSpec spec{1, 0, 1, 0.0, 0.0, 0, 0.0};
  CHECK(generate_scene(spec, PerceptionRange::regular()).empty());
  SceneSpec bad = spec;
  bad.curvature_max = 0.2;
  CHECK_THROWS_AS(generate_scene(bad, PerceptionRange::regular()), std::invalid_argument);
}

TEST_CASE("arc roads at 0.02 1/m give RDP vertex counts in [8, 64] over the long range") {
  const SceneSpec spec{5, 1, 2, 0.02, 0.02, 0, 0.0};
  const GroundTruthSet scene = generate_scene(spec, PerceptionRange::long_range());
  int boundaries = 0;
  for (const MapElement& e : scene) {
    if (e.category != ElementCategory::kBoundary) continue;
    ++boundaries;
    CHECK(e.shape.size() >= 8);
    CHECK(e.shape.size() <= 64);
  }
  CHECK(boundaries == 2);
}

TEST_CASE("every emitted vertex lies inside or on the range") {
  const PerceptionRange range = PerceptionRange::regular();
  for (const SceneSpec& spec : standard_suite()) {
    const GroundTruthSet scene = generate_scene(spec, range);
    for (const MapElement& e : scene) {
      for (const Point2& v : e.shape.vertices()) CHECK(range.contains(v));
    }
  }
}

TEST_CASE("dividers never intersect boundaries") {
  for (const PerceptionRange& range :
       {PerceptionRange::regular(), PerceptionRange::long_range()}) {
    for (const SceneSpec& spec : standard_suite()) {
      const GroundTruthSet scene = generate_scene(spec, range);
      for (const MapElement& div : scene) {
        if (div.category != ElementCategory::kDivider) continue;
        for (const MapElement& bound : scene) {
          if (bound.category != ElementCategory::kBoundary) continue;
          for (std::size_t i = 0; i < div.shape.edge_count(); ++i) {
            for (std::size_t j = 0; j < bound.shape.edge_count(); ++j) {
              CHECK_FALSE(segments_cross(
                  div.shape[i], div.shape[(i + 1) % div.shape.size()], bound.shape[j],
                  bound.shape[(j + 1) % bound.shape.size()]));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("clip_to_range") {
  const PerceptionRange range = PerceptionRange::regular();

  SUBCASE("elements fully inside are unchanged") {
    GroundTruthSet inside;
    inside.emplace_back(ElementCategory::kDivider, Polyline({{-5, -5}, {5, 5}}, false));
    const GroundTruthSet clipped = clip_to_range(inside, range);
    REQUIRE(clipped.size() == 1);
    CHECK(value_equal(inside, clipped));
  }

  SUBCASE("crossing both x borders lands endpoints exactly on them") {
    GroundTruthSet wide;
    wide.emplace_back(ElementCategory::kDivider, Polyline({{-40, 0}, {40, 0.5}}, false));
    const GroundTruthSet clipped = clip_to_range(wide, range);
    REQUIRE(clipped.size() == 1);
    CHECK(clipped[0].shape[0].x == -15.0);
    CHECK(clipped[0].shape[clipped[0].shape.size() - 1].x == 15.0);
  }

  SUBCASE("a U shape that exits and re-enters splits in two") {
    GroundTruthSet u;
    u.emplace_back(ElementCategory::kBoundary,
                   Polyline({{-5, 0}, {-5, 35}, {5, 35}, {5, 0}}, false));
    const GroundTruthSet clipped = clip_to_range(u, range);
    REQUIRE(clipped.size() == 2);
    for (const MapElement& e : clipped) {
      for (const Point2& v : e.shape.vertices()) CHECK(range.contains(v));
    }
    // Split endpoints sit exactly on the y border.
    CHECK(clipped[0].shape[clipped[0].shape.size() - 1].y == 30.0);
    CHECK(clipped[1].shape[0].y == 30.0);
  }

  SUBCASE("closed polygons are clipped as polygons") {
    GroundTruthSet poly;
    poly.emplace_back(ElementCategory::kPedCrossing,
                      Polyline({{13, -2}, {18, -2}, {18, 2}, {13, 2}}, true));
    const GroundTruthSet clipped = clip_to_range(poly, range);
    REQUIRE(clipped.size() == 1);
    CHECK(clipped[0].closed());
    for (const Point2& v : clipped[0].shape.vertices()) {
      CHECK(range.contains(v));
      CHECK(v.x <= 15.0);
    }
  }

  SUBCASE("fully outside elements and short fragments are dropped") {
    GroundTruthSet sets;
    sets.emplace_back(ElementCategory::kDivider, Polyline({{20, 0}, {30, 0}}, false));
    sets.emplace_back(ElementCategory::kDivider,
                      Polyline({{14.7, 0}, {15.4, 0}}, false));  // 0.3 m inside
    CHECK(clip_to_range(sets, range).empty());
  }
}

TEST_CASE("standard suite is pinned to 20 scenes") {
  const std::vector<SceneSpec> suite = standard_suite();
  REQUIRE(suite.size() == 20);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    CHECK(suite[i].seed == 101 + i);
    const GroundTruthSet scene = generate_scene(suite[i], PerceptionRange::regular());
    CHECK_FALSE(scene.empty());
    CHECK(scene.size() <= 12);
  }
}

TEST_CASE("the bundled manifest matches the pinned suite") {
  std::ifstream in(std::string(VECMAP_DATA_DIR) + "/standard_suite.json");
  REQUIRE(in.good());
  nlohmann::json manifest;
  in >> manifest;
  const std::vector<SceneSpec> suite = standard_suite();
  REQUIRE(manifest["scenes"].size() == suite.size());
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& row = manifest["scenes"][i];
    CHECK(row["seed"].get<std::uint64_t>() == suite[i].seed);
    CHECK(row["roads"].get<int>() == suite[i].road_count);
    CHECK(row["lanes"].get<int>() == suite[i].lanes_per_road);
    CHECK(row["curvature_min"].get<double>() == doctest::Approx(suite[i].curvature_min));
    CHECK(row["curvature_max"].get<double>() == doctest::Approx(suite[i].curvature_max));
    CHECK(row["crossings"].get<int>() == suite[i].crossing_count);
    CHECK(row["jitter"].get<double>() == doctest::Approx(suite[i].jitter));
  }
}
