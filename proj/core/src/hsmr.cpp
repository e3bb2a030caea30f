// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include "vecmap/hsmr.hpp"

#include <numeric>
#include <stdexcept>

namespace vecmap {

std::string to_string(ElementCategory c) {
  switch (c) {
    case ElementCategory::kPedCrossing:
      return "ped_crossing";
    case ElementCategory::kDivider:
      return "divider";
    case ElementCategory::kBoundary:
      return "boundary";
    case ElementCategory::kNone:
      return "none";
  }
  return "unknown";
}

std::optional<ElementCategory> category_from_string(const std::string& name) {
  if (name == "ped_crossing") return ElementCategory::kPedCrossing;
  if (name == "divider") return ElementCategory::kDivider;
  if (name == "boundary") return ElementCategory::kBoundary;
  if (name == "none") return ElementCategory::kNone;
  return std::nullopt;
}

MapElement::MapElement(ElementCategory category_, Polyline shape_)
    : category(category_), shape(std::move(shape_)) {
  if (category == ElementCategory::kNone) {
    throw std::invalid_argument("MapElement: none is only valid for padded slots");
  }
  const bool want_closed = category == ElementCategory::kPedCrossing;
  if (shape.closed() != want_closed) {
    throw std::invalid_argument("MapElement: closed flag inconsistent with category " +
                                to_string(category));
  }
}

DensitySchedule::DensitySchedule(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw std::invalid_argument("DensitySchedule: empty");
  for (std::size_t l = 0; l < counts_.size(); ++l) {
    if (counts_[l] < 2) throw std::invalid_argument("DensitySchedule: counts must be >= 2");
    if (l > 0 && counts_[l] != counts_[l - 1] && counts_[l] != 2 * counts_[l - 1] - 1) {
      throw std::invalid_argument(
          "DensitySchedule: increase must follow the doubling rule 2d-1");
    }
  }
}

DensitySchedule DensitySchedule::standard() {
  return DensitySchedule({3, 5, 9, 17, 17, 17});
}

Polyline element_at_density(const MapElement& e, int d) {
  const int min_d = e.closed() ? 3 : 2;
  if (d < min_d) throw std::invalid_argument("element_at_density: density below minimum");
  const int current = static_cast<int>(e.shape.size());
  if (current > d) return resample_uniform(e.shape, d);
  if (current < d) return insert_by_edge_length(e.shape, d);
  return e.shape;
}

std::vector<Polyline> ground_truth_pyramid(const MapElement& e, const DensitySchedule& s) {
  std::vector<Polyline> targets;
  targets.reserve(s.layers());
  for (std::size_t l = 0; l < s.layers(); ++l) {
    targets.push_back(element_at_density(e, s[l]));
  }
  return targets;
}

PermutationSet equivalent_permutations(bool closed, int d) {
  if (d < 2) throw std::invalid_argument("equivalent_permutations: d must be >= 2");
  PermutationSet set;
  std::vector<int> identity(static_cast<std::size_t>(d));
  std::iota(identity.begin(), identity.end(), 0);
  set.orderings.push_back(identity);

  auto push_unique = [&set](std::vector<int> ordering) {
    for (const auto& existing : set.orderings) {
      if (existing == ordering) return;
    }
    set.orderings.push_back(std::move(ordering));
  };

  if (!closed) {
    std::vector<int> reversal(identity.rbegin(), identity.rend());
    push_unique(std::move(reversal));
    return set;
  }
  for (int dir = 0; dir < 2; ++dir) {
    for (int shift = 0; shift < d; ++shift) {
      std::vector<int> ordering(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) {
        const int idx = dir == 0 ? shift + j : shift - j;
        ordering[static_cast<std::size_t>(j)] = ((idx % d) + d) % d;
      }
      push_unique(std::move(ordering));
    }
  }
  return set;
}

PermutationSet equivalent_permutations(const MapElement& e, int d) {
  return equivalent_permutations(e.closed(), d);
}

std::vector<Point2> apply_ordering(std::span<const Point2> vertices,
                                   const std::vector<int>& ordering) {
  if (vertices.size() != ordering.size()) {
    throw std::invalid_argument("apply_ordering: size mismatch");
  }
  std::vector<Point2> out(vertices.size());
  for (std::size_t j = 0; j < ordering.size(); ++j) {
    out[j] = vertices[static_cast<std::size_t>(ordering[j])];
  }
  return out;
}

}  // namespace vecmap
