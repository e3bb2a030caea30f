// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "vecmap/hsmr.hpp"

namespace vecmap {

/// BEV rectangle the map is predicted and evaluated in: x lateral,
/// y longitudinal, meters.
struct PerceptionRange {
  double x_min = -15.0;
  double x_max = 15.0;
  double y_min = -30.0;
  double y_max = 30.0;

  static PerceptionRange regular() { return {-15.0, 15.0, -30.0, 30.0}; }
  static PerceptionRange long_range() { return {-15.0, 15.0, -60.0, 60.0}; }

  bool valid() const { return x_min < x_max && y_min < y_max; }
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool contains(const Point2& p, double tol = 1e-9) const {
    return p.x >= x_min - tol && p.x <= x_max + tol && p.y >= y_min - tol &&
           p.y <= y_max + tol;
  }
};

/// Parameters of one synthetic scene. Roads share a concentric corridor
/// layout (common heading and curvature center), which guarantees that
/// offset elements of different roads never intersect.
struct SceneSpec {
  std::uint64_t seed = 0;
  int road_count = 1;
  int lanes_per_road = 2;
  double curvature_min = 0.0;   // 1/m, signed range sampled per scene
  double curvature_max = 0.0;   // |curvature| <= 0.05
  int crossing_count = 1;
  double jitter = 0.0;          // lateral wave amplitude, meters
};

/// Deterministic synthetic ground truth: road boundaries, lane dividers
/// and pedestrian crossings, RDP-simplified at 0.05 m and clipped to the
/// perception range.
GroundTruthSet generate_scene(const SceneSpec& spec, const PerceptionRange& range);

/// Intersects every element with the range rectangle. Open elements may
/// split into several fragments; closed ones are clipped as polygons.
/// Fragments shorter than 1.0 m are discarded.
GroundTruthSet clip_to_range(const GroundTruthSet& gts, const PerceptionRange& range);

/// The pinned 20-seed suite used by the acceptance runs.
std::vector<SceneSpec> standard_suite();

}  // namespace vecmap
