// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "vecmap/hsmr.hpp"

namespace vecmap {

/// One decoder candidate: free vertex coordinates at the active layer
/// density plus one classification logit per category (including none).
struct PredictedElement {
  std::vector<Point2> vertices;
  std::array<double, kCategoryCount> logits{};

  std::array<double, kCategoryCount> probabilities() const;  // softmax
  double none_probability() const;
};

std::array<double, kCategoryCount> softmax(const std::array<double, kCategoryCount>& logits);

/// One real ground-truth slot rendered at the active layer density,
/// together with its equivalence orderings.
struct MatchTarget {
  ElementCategory category;
  std::vector<Point2> vertices;
  PermutationSet perms;
};

/// Renders every element of the set at density d and attaches its
/// equivalence orderings.
std::vector<MatchTarget> make_targets(const GroundTruthSet& gts, int d);

/// Square cost matrix over (ground-truth slot, prediction) pairs. Rows
/// beyond the real targets are padded slots with zero cost. Each real cell
/// caches the minimizing vertex ordering for later loss computation.
struct CostMatrix {
  std::size_t n = 0;
  std::size_t real_rows = 0;
  std::vector<double> cost;                     // n * n, row major
  std::vector<std::vector<int>> cell_ordering;  // real_rows * n

  double at(std::size_t row, std::size_t col) const { return cost[row * n + col]; }
  const std::vector<int>& ordering_at(std::size_t row, std::size_t col) const {
    return cell_ordering[row * n + col];
  }
};

struct Assignment {
  /// Prediction index assigned to each ground-truth slot (a bijection).
  std::vector<int> pred_for_slot;
  /// Best vertex ordering per real slot: reindexing the target by it
  /// aligns target vertices with the matched prediction's indices.
  std::vector<std::vector<int>> target_ordering;
  double total_cost = 0.0;
};

/// Minimum over the equivalence orderings of the mean L1 vertex distance,
/// plus the minimizing ordering (applied to the target).
std::pair<double, std::vector<int>> polyline_match_cost(const PredictedElement& pred,
                                                        std::span<const Point2> target,
                                                        const PermutationSet& perms);

/// Cell (i, k): -p_k(c_i) + match cost for real slots i, 0 for padded ones.
CostMatrix build_cost_matrix(const std::vector<PredictedElement>& preds,
                             const std::vector<MatchTarget>& targets);

/// Kuhn-Munkres optimal assignment on a square finite matrix. Deterministic:
/// augmenting paths prefer the lowest column index on ties.
Assignment hungarian(const CostMatrix& costs);

/// build_cost_matrix + hungarian, retaining each matched pair's best
/// vertex ordering.
Assignment match(const std::vector<PredictedElement>& preds,
                 const std::vector<MatchTarget>& targets);

}  // namespace vecmap
