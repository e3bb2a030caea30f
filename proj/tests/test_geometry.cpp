// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vecmap/geometry.hpp"

using namespace vecmap;

TEST_CASE("polyline construction enforces invariants") {
  CHECK_THROWS_AS(Polyline({{0, 0}}, false), std::invalid_argument);
  CHECK_THROWS_AS(Polyline({{0, 0}, {1, 0}}, true), std::invalid_argument);
  CHECK_THROWS_AS(Polyline({{0, 0}, {0, 0}}, false), std::invalid_argument);
  CHECK_THROWS_AS(Polyline({{0, 0}, {1, 0}, {1e-10, 0}}, true), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(Polyline({{0, 0}, {nan, 1}}, false), std::invalid_argument);
  CHECK_THROWS_AS(Segment({0, 0}, {0, 0}), std::invalid_argument);
  CHECK_NOTHROW(Polyline({{0, 0}, {1, 0}, {1, 1}}, true));
}

TEST_CASE("arc_length") {
  CHECK(arc_length(Polyline({{0, 0}, {3, 0}, {3, 4}}, false)) == doctest::Approx(7.0));
  CHECK(arc_length(Polyline({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true)) == doctest::Approx(4.0));
  CHECK(arc_length(Polyline({{0, 0}, {0, 0.001}}, false)) == doctest::Approx(0.001));
}

TEST_CASE("rdp_simplify drops near-collinear vertices and keeps deviations") {
  const Polyline flat = rdp_simplify(Polyline({{0, 0}, {1, 0.001}, {2, 0}}, false), 0.05);
  REQUIRE(flat.size() == 2);
  CHECK(flat[0] == Point2{0, 0});
  CHECK(flat[1] == Point2{2, 0});

  const Polyline peak = rdp_simplify(Polyline({{0, 0}, {1, 1}, {2, 0}}, false), 0.05);
  CHECK(peak.size() == 3);

  CHECK_THROWS_AS(rdp_simplify(peak, 0.0), std::invalid_argument);
}

TEST_CASE("rdp_simplify keeps every dropped vertex within epsilon of the chain") {
  Rng rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    // Noisy near-straight line with 100 vertices.
    std::vector<Point2> pts;
    for (int i = 0; i < 100; ++i) {
      pts.push_back({0.1 * i, rng.uniform(-0.02, 0.02)});
    }
    const Polyline noisy(pts, false);
    const Polyline simplified = rdp_simplify(noisy, 0.05);
    for (const Point2& v : noisy.vertices()) {
      CHECK(test::brute_chain_distance(v, simplified) <= 0.05 + 1e-12);
    }
  }
}

TEST_CASE("rdp_simplify is idempotent") {
  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const Polyline chain = test::random_open_chain(rng, 40);
    const Polyline once = rdp_simplify(chain, 0.05);
    const Polyline twice = rdp_simplify(once, 0.05);
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i] == twice[i]);
  }
  for (int rep = 0; rep < 10; ++rep) {
    const Polyline poly = test::random_convex_polygon(rng, 12);
    const Polyline once = rdp_simplify(poly, 0.05);
    const Polyline twice = rdp_simplify(once, 0.05);
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i] == twice[i]);
  }
}

TEST_CASE("resample_uniform open") {
  const Polyline five = resample_uniform(Polyline({{0, 0}, {4, 0}}, false), 5);
  REQUIRE(five.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(five[static_cast<std::size_t>(i)].x == doctest::Approx(i));
    CHECK(five[static_cast<std::size_t>(i)].y == 0.0);
  }

  const Polyline two = resample_uniform(Polyline({{0, 0}, {3, 0}, {3, 4}}, false), 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == Point2{0, 0});
  CHECK(two[1] == Point2{3, 4});

  CHECK_THROWS_AS(resample_uniform(two, 1), std::invalid_argument);
}

TEST_CASE("resample_uniform closed anchors at vertex 0") {
  const Polyline square({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true);
  const Polyline res = resample_uniform(square, 4);
  REQUIRE(res.size() == 4);
  // Perimeter positions {0, 1, 2, 3} from the arclength parameterization.
  CHECK(res[0] == Point2{0, 0});
  CHECK(norm(res[1] - Point2{1, 0}) < 1e-12);
  CHECK(norm(res[2] - Point2{1, 1}) < 1e-12);
  CHECK(norm(res[3] - Point2{0, 1}) < 1e-12);
  CHECK_THROWS_AS(resample_uniform(square, 2), std::invalid_argument);
}

TEST_CASE("resample_uniform preserves arclength when refining") {
  Rng rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    // Equal-length edges (the chain is its own uniform sampling), so any
    // refinement whose sample grid hits the corners conserves length.
    std::vector<Point2> pts;
    Point2 cur{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    double heading = rng.uniform(0.0, 6.283185307179586);
    const double step = rng.uniform(1.0, 2.0);
    for (int i = 0; i < 8; ++i) {
      pts.push_back(cur);
      heading += rng.uniform(-0.7, 0.7);
      cur += step * Point2{std::cos(heading), std::sin(heading)};
    }
    const Polyline chain(pts, false);
    const int n = 8 + 7 * rng.uniform_int(0, 5);
    const Polyline res = resample_uniform(chain, n);
    CHECK(arc_length(res) == doctest::Approx(arc_length(chain)).epsilon(1e-6));
  }
}

TEST_CASE("insert_by_edge_length") {
  const Polyline mid = insert_by_edge_length(Polyline({{0, 0}, {2, 0}}, false), 3);
  REQUIRE(mid.size() == 3);
  CHECK(mid[1] == Point2{1, 0});

  // Longest-gap-first: the extra vertex lands on the length-3 edge.
  const Polyline uneven = insert_by_edge_length(Polyline({{0, 0}, {1, 0}, {4, 0}}, false), 4);
  REQUIRE(uneven.size() == 4);
  CHECK(uneven[0] == Point2{0, 0});
  CHECK(uneven[1] == Point2{1, 0});
  CHECK(uneven[2] == Point2{2.5, 0});
  CHECK(uneven[3] == Point2{4, 0});

  const Polyline quarters = insert_by_edge_length(Polyline({{0, 0}, {1, 0}}, false), 5);
  REQUIRE(quarters.size() == 5);
  CHECK(quarters[1] == Point2{0.25, 0});
  CHECK(quarters[2] == Point2{0.5, 0});
  CHECK(quarters[3] == Point2{0.75, 0});

  CHECK_THROWS_AS(insert_by_edge_length(quarters, 5), std::invalid_argument);
}

TEST_CASE("insert_by_edge_length keeps originals and follows the largest gap") {
  Rng rng(4242);
  for (int rep = 0; rep < 20; ++rep) {
    const Polyline chain = test::random_open_chain(rng, 6);
    const int n = 7 + rng.uniform_int(0, 12);
    const Polyline grown = insert_by_edge_length(chain, n);
    REQUIRE(grown.size() == static_cast<std::size_t>(n));
    // All originals present in order.
    std::size_t pos = 0;
    for (const Point2& v : chain.vertices()) {
      while (pos < grown.size() && !(grown[pos] == v)) ++pos;
      REQUIRE(pos < grown.size());
    }
    // Greedy oracle: replay the largest-gap-first choices.
    std::vector<double> len;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      len.push_back(distance(chain[i], chain[i + 1]));
    }
    std::vector<int> count(len.size(), 0);
    for (int extra = n - static_cast<int>(chain.size()); extra > 0; --extra) {
      std::size_t pick = 0;
      double best = -1.0;
      for (std::size_t e = 0; e < len.size(); ++e) {
        const double gap = len[e] / (count[e] + 1);
        if (gap > best) {
          best = gap;
          pick = e;
        }
      }
      count[pick] += 1;
    }
    // Verify per-edge inserted counts by walking the grown chain.
    std::size_t g = 0;
    for (std::size_t e = 0; e < len.size(); ++e) {
      REQUIRE(grown[g] == chain[e]);
      ++g;
      int inserted = 0;
      while (g < grown.size() && !(grown[g] == chain[e + 1])) {
        ++inserted;
        ++g;
      }
      CHECK(inserted == count[e]);
    }
  }
}

TEST_CASE("midpoint_densify") {
  const Polyline a = midpoint_densify(Polyline({{0, 0}, {2, 0}}, false));
  REQUIRE(a.size() == 3);
  CHECK(a[1] == Point2{1, 0});

  const Polyline b = midpoint_densify(Polyline({{0, 0}, {2, 0}, {2, 2}}, false));
  REQUIRE(b.size() == 5);
  CHECK(b[1] == Point2{1, 0});
  CHECK(b[3] == Point2{2, 1});

  // Density 3 -> 5 -> 9 -> 17 under repeated application.
  Polyline chain({{0, 0}, {1, 0.5}, {2, 0}}, false);
  for (const std::size_t expect : {5u, 9u, 17u}) {
    chain = midpoint_densify(chain);
    CHECK(chain.size() == expect);
  }

  const Polyline closed = midpoint_densify(Polyline({{0, 0}, {1, 0}, {1, 1}}, true));
  CHECK(closed.size() == 6);
  CHECK(closed[5] == Point2{0.5, 0.5});
}

TEST_CASE("midpoint_densify preserves originals bit-exactly at even indices") {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const Polyline chain = test::random_open_chain(rng, 9);
    const Polyline dense = midpoint_densify(chain);
    REQUIRE(dense.size() == 17);
    for (std::size_t k = 0; k < chain.size(); ++k) {
      CHECK(dense[2 * k].x == chain[k].x);
      CHECK(dense[2 * k].y == chain[k].y);
    }
  }
}

TEST_CASE("point_segment_distance") {
  const Segment base({0, 0}, {2, 0});
  CHECK(point_segment_distance({1, 1}, base) == doctest::Approx(1.0));
  CHECK(point_segment_distance({3, 0}, base) == doctest::Approx(1.0));
  CHECK(point_segment_distance({0.3, 0.7}, Segment({0, 0}, {1, 1})) ==
        doctest::Approx(std::abs(0.3 - 0.7) / std::sqrt(2.0)));
}

TEST_CASE("point_segment_distance is non-negative, zero only on the segment") {
  Rng rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const Segment s({rng.uniform(-5, 5), rng.uniform(-5, 5)},
                    {rng.uniform(-5, 5) + 6.0, rng.uniform(-5, 5)});
    const Point2 v{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const double d = point_segment_distance(v, s);
    CHECK(d >= 0.0);
    const Point2 on = s.a + rng.uniform() * (s.b - s.a);
    CHECK(point_segment_distance(on, s) < 1e-9);
  }
}

TEST_CASE("direction_cosine") {
  const Segment right({0, 0}, {1, 0});
  CHECK(direction_cosine(right, Segment({5, 3}, {7, 3})) == doctest::Approx(1.0));
  CHECK(direction_cosine(right, Segment({0, 0}, {0, 2})) == doctest::Approx(0.0));
  CHECK(direction_cosine(right, Segment({1, 0}, {0, 0})) == doctest::Approx(-1.0));

  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const Segment e({rng.uniform(-5, 5), rng.uniform(-5, 5)},
                    {rng.uniform(-5, 5) + 6.0, rng.uniform(-5, 5)});
    CHECK(std::abs(direction_cosine(e, e) - 1.0) < 1e-12);
    const Segment rev(e.b, e.a);
    CHECK(direction_cosine(e, rev) == doctest::Approx(-direction_cosine(e, e)));
  }
}

TEST_CASE("turning_cosine") {
  CHECK(turning_cosine(Segment({0, 0}, {1, 0}), Segment({1, 0}, {2, 0})) ==
        doctest::Approx(1.0));
  CHECK(turning_cosine(Segment({0, 0}, {1, 0}), Segment({1, 0}, {1, 1})) ==
        doctest::Approx(0.0));
  CHECK(turning_cosine(Segment({0, 0}, {1, 0}), Segment({1, 0}, {0, 0})) ==
        doctest::Approx(-1.0));
  CHECK_THROWS_AS(turning_cosine(Segment({0, 0}, {1, 0}), Segment({2, 0}, {3, 0})),
                  std::invalid_argument);
}
