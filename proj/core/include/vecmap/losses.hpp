// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>
#include <vector>

#include "vecmap/hsmr.hpp"

namespace vecmap {

/// Loss scales. Defaults match the training configuration this toolkit
/// reproduces: cls 2.0, vertex 5.0, edge point 5.0, slope and angle 5e-3.
struct LossWeights {
  double lambda_cls = 2.0;
  double lambda_v = 5.0;
  double lambda_p = 5.0;
  double lambda_s = 5e-3;
  double lambda_a = 5e-3;
};

/// Splits the vertices of one layer's representation into originals
/// (carried over from the previous layer) and inserted ones (new at this
/// layer), and records which original edge each inserted vertex subdivides.
class VertexRoleMask {
 public:
  VertexRoleMask(int density, std::vector<int> original_indices,
                 std::vector<std::vector<int>> inserted_on_edge);

  /// Every vertex original; no inserted vertices (first layer and layers
  /// whose density does not grow).
  static VertexRoleMask all_original(int density);

  /// Mask after midpoint densification of an open chain with `coarse`
  /// vertices: density 2*coarse-1, originals at even indices, one inserted
  /// vertex per original edge at the odd indices.
  static VertexRoleMask midpoint_doubling(int coarse);

  int density() const { return density_; }
  const std::vector<int>& original_indices() const { return original_indices_; }
  /// Inserted vertex indices per original edge j (between originals j, j+1).
  const std::vector<std::vector<int>>& inserted_on_edge() const { return inserted_on_edge_; }
  std::size_t original_count() const { return original_indices_.size(); }
  std::size_t inserted_count() const;

 private:
  int density_;
  std::vector<int> original_indices_;
  std::vector<std::vector<int>> inserted_on_edge_;
};

/// Loss value with its gradient w.r.t. the predicted vertex coordinates.
struct ValueGrad {
  double value = 0.0;
  std::vector<Point2> grad;
};

struct FocalGrad {
  double value = 0.0;
  std::array<double, kCategoryCount> grad{};
};

/// Per-term values (unweighted) plus the weighted-total gradients.
struct LossBreakdown {
  double vertex = 0.0;
  double edge_point = 0.0;
  double edge_slope = 0.0;
  double edge_angle = 0.0;
  double classification = 0.0;
  double total = 0.0;
  std::vector<Point2> vertex_grad;
  std::array<double, kCategoryCount> logit_grad{};
};

/// Sum over original vertices of the L1 distance to the target vertex at
/// the same index. Gradient is the coordinate-wise sign on originals and
/// zero on inserted vertices (sign(0) := 0).
ValueGrad vertex_loss(std::span<const Point2> pred, std::span<const Point2> target,
                      const VertexRoleMask& mask);

/// Sum over inserted vertices of the distance to the ground-truth edge
/// they subdivide (the segment spanned by the target's original vertices
/// j and j+1, clamped to its endpoints).
ValueGrad edge_point_loss(std::span<const Point2> pred, std::span<const Point2> target,
                          const VertexRoleMask& mask);

/// Sum over original edges of 1 - cos(angle between the predicted and
/// target edge directions). Throws on degenerate predicted edges.
ValueGrad edge_slope_loss(std::span<const Point2> pred, std::span<const Point2> target,
                          const VertexRoleMask& mask);

/// Sum over interior original vertices of 1 - cos(predicted turning angle
/// minus target turning angle), angles taken between adjacent original
/// edges. Requires density >= 3.
ValueGrad edge_angle_loss(std::span<const Point2> pred, std::span<const Point2> target,
                          const VertexRoleMask& mask);

/// -alpha * (1 - p_t)^gamma * log(p_t) with p_t the softmax probability of
/// the true category; gradient w.r.t. the logits.
FocalGrad focal_loss(const std::array<double, kCategoryCount>& logits,
                     ElementCategory truth, double alpha = 0.25, double gamma = 2.0);

/// Weighted combination of the four polyline terms. The classification
/// term is left at zero; callers supervising logits add it via the same
/// weights. total = lambda_v*vertex + lambda_p*point + lambda_s*slope +
/// lambda_a*angle (+ lambda_cls*classification).
LossBreakdown polyline_loss(std::span<const Point2> pred, std::span<const Point2> target,
                            const VertexRoleMask& mask, const LossWeights& w);

}  // namespace vecmap
