// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>

#include "test_util.hpp"
#include "vecmap/eval.hpp"

using namespace vecmap;

namespace {

// Independent sampled-chamfer oracle: its own arclength walker plus the
// O(n^2) double loop.
std::vector<Point2> naive_samples(const Polyline& p, int n) {
  std::vector<Point2> verts = p.vertices();
  if (p.closed()) verts.push_back(verts.front());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) total += distance(verts[i], verts[i + 1]);
  std::vector<Point2> out;
  const int denom = p.closed() ? n : n - 1;
  for (int i = 0; i < n; ++i) {
    double want = total * static_cast<double>(i) / denom;
    Point2 at = verts.back();
    for (std::size_t e = 0; e + 1 < verts.size(); ++e) {
      const double len = distance(verts[e], verts[e + 1]);
      if (want <= len) {
        at = verts[e] + (len > 0.0 ? want / len : 0.0) * (verts[e + 1] - verts[e]);
        break;
      }
      want -= len;
    }
    out.push_back(at);
  }
  return out;
}

double naive_chamfer(const Polyline& a, const Polyline& b, int n) {
  const std::vector<Point2> sa = naive_samples(a, n);
  const std::vector<Point2> sb = naive_samples(b, n);
  double ab = 0.0;
  for (const Point2& p : sa) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& q : sb) best = std::min(best, distance(p, q));
    ab += best;
  }
  double ba = 0.0;
  for (const Point2& q : sb) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& p : sa) best = std::min(best, distance(p, q));
    ba += best;
  }
  return 0.5 * (ab / sa.size() + ba / sb.size());
}

PredictionSet as_predictions(const GroundTruthSet& gts, double confidence) {
  PredictionSet preds;
  for (const MapElement& e : gts) preds.emplace_back(e.category, confidence, e.shape);
  return preds;
}

GroundTruthSet simple_scene() {
  GroundTruthSet scene;
  scene.emplace_back(ElementCategory::kDivider, Polyline({{0, -10}, {0, 10}}, false));
  scene.emplace_back(ElementCategory::kBoundary, Polyline({{7, -10}, {7, 10}}, false));
  scene.emplace_back(ElementCategory::kPedCrossing,
                     Polyline({{-5, 0}, {-2, 0}, {-2, 2}, {-5, 2}}, true));
  return scene;
}

}  // namespace

TEST_CASE("chamfer_distance basics") {
  const Polyline line({{0, 0}, {10, 0}}, false);
  CHECK(chamfer_distance(line, line) == 0.0);

  const Polyline above({{0, 1}, {10, 1}}, false);
  CHECK(chamfer_distance(line, above) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(chamfer_distance(line, line, ChamferParams{1}), std::invalid_argument);
}

TEST_CASE("chamfer_distance equals the brute-force double loop") {
  Rng rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    const Polyline a = test::random_open_chain(rng, 7);
    const Polyline b = test::random_open_chain(rng, 5);
    CHECK(chamfer_distance(a, b) == doctest::Approx(naive_chamfer(a, b, 100)).epsilon(1e-9));
    const Polyline poly = test::random_convex_polygon(rng, 6);
    CHECK(chamfer_distance(a, poly) ==
          doctest::Approx(naive_chamfer(a, poly, 100)).epsilon(1e-9));
  }
}

TEST_CASE("chamfer_distance symmetry and invariances") {
  Rng rng(21);
  for (int rep = 0; rep < 10; ++rep) {
    const Polyline a = test::random_open_chain(rng, 6);
    const Polyline b = test::random_open_chain(rng, 9);
    const double ab = chamfer_distance(a, b);
    CHECK(std::abs(ab - chamfer_distance(b, a)) < 1e-12);

    std::vector<Point2> rev(a.vertices().rbegin(), a.vertices().rend());
    CHECK(chamfer_distance(Polyline(rev, false), b) == doctest::Approx(ab).epsilon(1e-9));

    const Point2 t{rng.uniform(-30, 30), rng.uniform(-30, 30)};
    std::vector<Point2> am = a.vertices();
    std::vector<Point2> bm = b.vertices();
    for (Point2& p : am) p += t;
    for (Point2& p : bm) p += t;
    CHECK(chamfer_distance(Polyline(am, false), Polyline(bm, false)) ==
          doctest::Approx(ab).epsilon(1e-9));
    CHECK(chamfer_distance(a, a) == 0.0);
  }
}

TEST_CASE("match_instances greedy protocol") {
  const GroundTruthSet scene = simple_scene();

  SUBCASE("perfect predictions are all true positives") {
    for (const ElementCategory cat : kRealCategories) {
      const std::vector<Detection> dets =
          match_instances(as_predictions(scene, 1.0), scene, cat, 0.5);
      for (const Detection& d : dets) CHECK(d.true_positive);
    }
  }

  SUBCASE("duplicate of one ground truth: higher confidence wins") {
    PredictionSet preds;
    preds.emplace_back(ElementCategory::kDivider, 0.4, scene[0].shape);
    preds.emplace_back(ElementCategory::kDivider, 0.9, scene[0].shape);
    const std::vector<Detection> dets =
        match_instances(preds, scene, ElementCategory::kDivider, 0.5);
    REQUIRE(dets.size() == 2);
    CHECK(dets[0].confidence == 0.9);
    CHECK(dets[0].true_positive);
    CHECK(dets[1].confidence == 0.4);
    CHECK_FALSE(dets[1].true_positive);
  }

  SUBCASE("a 2 m translation fails the 1.5 m threshold") {
    PredictionSet preds;
    std::vector<Point2> moved = scene[0].shape.vertices();
    for (Point2& p : moved) p.x += 2.0;
    preds.emplace_back(ElementCategory::kDivider, 1.0, Polyline(moved, false));
    const std::vector<Detection> dets =
        match_instances(preds, scene, ElementCategory::kDivider, 1.5);
    REQUIRE(dets.size() == 1);
    CHECK_FALSE(dets[0].true_positive);
  }
}

TEST_CASE("average_precision") {
  SUBCASE("all true positives give exactly 1") {
    std::vector<Detection> dets = {{0.9, true}, {0.8, true}, {0.7, true}};
    const APResult r = average_precision(dets, 3);
    CHECK(*r.ap == 1.0);
  }

  SUBCASE("hand-computed PR example") {
    // Labels [TP, FP, TP] with 2 ground truths: AP = (1 + 2/3) / 2.
    std::vector<Detection> dets = {{0.9, true}, {0.8, false}, {0.7, true}};
    const APResult r = average_precision(dets, 2);
    CHECK(*r.ap == doctest::Approx((1.0 + 2.0 / 3.0) / 2.0).epsilon(1e-12));
    CHECK(r.tp_count == 2);
    CHECK(r.fp_count == 1);
  }

  SUBCASE("all false positives give 0; zero ground truth is not applicable") {
    std::vector<Detection> dets = {{0.9, false}, {0.8, false}};
    CHECK(*average_precision(dets, 2).ap == 0.0);
    CHECK_FALSE(average_precision(dets, 0).ap.has_value());
  }
}

TEST_CASE("AP is monotone in the threshold and stable under same-label reordering") {
  Rng rng(33);
  for (int rep = 0; rep < 10; ++rep) {
    GroundTruthSet scene;
    const int m = rng.uniform_int(2, 5);
    for (int i = 0; i < m; ++i) {
      scene.emplace_back(ElementCategory::kDivider,
                         Polyline({{4.0 * i, -8.0}, {4.0 * i, 8.0}}, false));
    }
    PredictionSet preds;
    for (int i = 0; i < m + 2; ++i) {
      const double ox = rng.uniform(0.0, 4.0 * (m - 1));
      const double off = rng.uniform(0.0, 2.0);
      preds.emplace_back(ElementCategory::kDivider, rng.uniform(0.05, 0.95),
                         Polyline({{ox + off, -8.0}, {ox + off, 8.0}}, false));
    }
    double prev = -1.0;
    for (const double tau : {0.5, 1.0, 1.5}) {
      const APResult r = average_precision(
          match_instances(preds, scene, ElementCategory::kDivider, tau), scene.size());
      CHECK(*r.ap >= prev - 1e-12);
      prev = *r.ap;
    }

    // Confidence swaps inside same-label runs leave AP unchanged.
    std::vector<Detection> dets =
        match_instances(preds, scene, ElementCategory::kDivider, 1.0);
    std::sort(dets.begin(), dets.end(),
              [](const Detection& a, const Detection& b) { return a.confidence > b.confidence; });
    const double base = *average_precision(dets, scene.size()).ap;
    std::vector<Detection> shuffled = dets;
    for (std::size_t i = 0; i + 1 < shuffled.size(); ++i) {
      if (shuffled[i].true_positive == shuffled[i + 1].true_positive) {
        std::swap(shuffled[i].confidence, shuffled[i + 1].confidence);
      }
    }
    CHECK(*average_precision(shuffled, scene.size()).ap ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("map_score") {
  const GroundTruthSet scene = simple_scene();

  SUBCASE("perfect predictions score exactly 1") {
    const MapScore score = map_score({as_predictions(scene, 1.0)}, {scene});
    for (const auto& ap : score.per_category) CHECK(*ap == 1.0);
    CHECK(*score.map == 1.0);
    CHECK(score.warnings.empty());
  }

  SUBCASE("empty predictions score 0") {
    const MapScore score = map_score({PredictionSet{}}, {scene});
    CHECK(*score.map == 0.0);
  }

  SUBCASE("missing categories are excluded with warnings") {
    GroundTruthSet partial;
    partial.emplace_back(ElementCategory::kDivider, Polyline({{0, -10}, {0, 10}}, false));
    const MapScore score = map_score({as_predictions(partial, 1.0)}, {partial});
    CHECK_FALSE(score.per_category[0].has_value());  // ped_crossing absent
    CHECK(*score.per_category[1] == 1.0);
    CHECK_FALSE(score.per_category[2].has_value());  // boundary absent
    CHECK(*score.map == 1.0);
    CHECK(score.warnings.size() == 2);
  }

  SUBCASE("text and csv tables render") {
    const MapScore score = map_score({as_predictions(scene, 1.0)}, {scene});
    const std::string text = to_text_table(score);
    CHECK(text.find("ped_crossing") != std::string::npos);
    CHECK(text.find("mAP") != std::string::npos);
    const std::string csv = to_csv(score);
    CHECK(csv.find("ap_ped_crossing,ap_divider,ap_boundary,map") == 0);
  }
}
