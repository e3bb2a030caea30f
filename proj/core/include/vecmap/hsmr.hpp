// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vecmap/geometry.hpp"

namespace vecmap {

/// Map element categories. `none` is reserved for padded ground-truth
/// slots in set matching and for the reject class of predictions.
enum class ElementCategory : int {
  kPedCrossing = 0,
  kDivider = 1,
  kBoundary = 2,
  kNone = 3,
};

inline constexpr int kCategoryCount = 4;
inline constexpr std::array<ElementCategory, 3> kRealCategories = {
    ElementCategory::kPedCrossing, ElementCategory::kDivider,
    ElementCategory::kBoundary};

std::string to_string(ElementCategory c);
std::optional<ElementCategory> category_from_string(const std::string& name);

/// One vectorized map instance. Pedestrian crossings are closed polygons,
/// dividers and boundaries open chains; the shape's closed flag must agree
/// with the category.
struct MapElement {
  ElementCategory category;
  Polyline shape;

  MapElement(ElementCategory category_, Polyline shape_);
  bool closed() const { return shape.closed(); }
};

using GroundTruthSet = std::vector<MapElement>;

/// Per-layer vertex counts. Non-decreasing; every increase must follow the
/// open-element midpoint doubling rule d_next == 2*d - 1.
class DensitySchedule {
 public:
  explicit DensitySchedule(std::vector<int> counts);
  static DensitySchedule standard();  // 3/5/9/17/17/17

  const std::vector<int>& counts() const { return counts_; }
  std::size_t layers() const { return counts_.size(); }
  int operator[](std::size_t layer) const { return counts_[layer]; }

 private:
  std::vector<int> counts_;
};

/// Vertex-index orderings that represent the same shape: identity plus
/// full reversal for open elements, all cyclic shifts in both directions
/// for closed ones. Always contains the identity first.
struct PermutationSet {
  std::vector<std::vector<int>> orderings;

  std::size_t size() const { return orderings.size(); }
  const std::vector<int>& operator[](std::size_t i) const { return orderings[i]; }
};

/// Renders the element at exactly d vertices: uniform resampling when the
/// element has more, distance-based insertion when it has fewer.
Polyline element_at_density(const MapElement& e, int d);

/// One supervision target per decoder layer, at that layer's density.
std::vector<Polyline> ground_truth_pyramid(const MapElement& e, const DensitySchedule& s);

/// Equivalence orderings for a density-d rendering of the element.
PermutationSet equivalent_permutations(const MapElement& e, int d);
PermutationSet equivalent_permutations(bool closed, int d);

/// out[j] = vertices[ordering[j]].
std::vector<Point2> apply_ordering(std::span<const Point2> vertices,
                                   const std::vector<int>& ordering);

}  // namespace vecmap
