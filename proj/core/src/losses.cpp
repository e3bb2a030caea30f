// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include "vecmap/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vecmap/matching.hpp"

namespace vecmap {

namespace {

constexpr double kDegenerateEdge = 1e-9;

double sign_or_zero(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void check_sizes(std::span<const Point2> pred, std::span<const Point2> target,
                 const VertexRoleMask& mask, const char* op) {
  if (pred.size() != target.size() ||
      pred.size() != static_cast<std::size_t>(mask.density())) {
    throw std::invalid_argument(std::string(op) + ": mask/density mismatch");
  }
}

}  // namespace

VertexRoleMask::VertexRoleMask(int density, std::vector<int> original_indices,
                               std::vector<std::vector<int>> inserted_on_edge)
    : density_(density),
      original_indices_(std::move(original_indices)),
      inserted_on_edge_(std::move(inserted_on_edge)) {
  if (density_ < 2) throw std::invalid_argument("VertexRoleMask: density < 2");
  if (original_indices_.empty()) {
    throw std::invalid_argument("VertexRoleMask: no original vertices");
  }
  if (inserted_on_edge_.size() + 1 != original_indices_.size()) {
    throw std::invalid_argument("VertexRoleMask: need one inserted list per original edge");
  }
  std::vector<char> seen(static_cast<std::size_t>(density_), 0);
  for (std::size_t j = 0; j < original_indices_.size(); ++j) {
    const int o = original_indices_[j];
    if (o < 0 || o >= density_ || seen[static_cast<std::size_t>(o)]) {
      throw std::invalid_argument("VertexRoleMask: bad original index");
    }
    if (j > 0 && original_indices_[j - 1] >= o) {
      throw std::invalid_argument("VertexRoleMask: original indices must ascend");
    }
    seen[static_cast<std::size_t>(o)] = 1;
  }
  std::size_t inserted_total = 0;
  for (std::size_t j = 0; j < inserted_on_edge_.size(); ++j) {
    for (const int k : inserted_on_edge_[j]) {
      if (k <= original_indices_[j] || k >= original_indices_[j + 1] ||
          seen[static_cast<std::size_t>(k)]) {
        throw std::invalid_argument("VertexRoleMask: inserted index outside its edge");
      }
      seen[static_cast<std::size_t>(k)] = 1;
      ++inserted_total;
    }
  }
  if (inserted_total + original_indices_.size() != static_cast<std::size_t>(density_)) {
    throw std::invalid_argument("VertexRoleMask: indices do not partition the vertices");
  }
}

VertexRoleMask VertexRoleMask::all_original(int density) {
  std::vector<int> originals(static_cast<std::size_t>(density));
  for (int i = 0; i < density; ++i) originals[static_cast<std::size_t>(i)] = i;
  return VertexRoleMask(density, std::move(originals),
                        std::vector<std::vector<int>>(static_cast<std::size_t>(density - 1)));
}

VertexRoleMask VertexRoleMask::midpoint_doubling(int coarse) {
  if (coarse < 2) throw std::invalid_argument("midpoint_doubling: coarse < 2");
  const int density = 2 * coarse - 1;
  std::vector<int> originals(static_cast<std::size_t>(coarse));
  std::vector<std::vector<int>> inserted(static_cast<std::size_t>(coarse - 1));
  for (int j = 0; j < coarse; ++j) originals[static_cast<std::size_t>(j)] = 2 * j;
  for (int j = 0; j + 1 < coarse; ++j) inserted[static_cast<std::size_t>(j)] = {2 * j + 1};
  return VertexRoleMask(density, std::move(originals), std::move(inserted));
}

std::size_t VertexRoleMask::inserted_count() const {
  std::size_t total = 0;
  for (const auto& edge : inserted_on_edge_) total += edge.size();
  return total;
}

ValueGrad vertex_loss(std::span<const Point2> pred, std::span<const Point2> target,
                      const VertexRoleMask& mask) {
  check_sizes(pred, target, mask, "vertex_loss");
  ValueGrad out;
  out.grad.assign(pred.size(), Point2{});
  for (const int o : mask.original_indices()) {
    const std::size_t i = static_cast<std::size_t>(o);
    const Point2 d = pred[i] - target[i];
    out.value += l1_norm(d);
    out.grad[i] = {sign_or_zero(d.x), sign_or_zero(d.y)};
  }
  return out;
}

ValueGrad edge_point_loss(std::span<const Point2> pred, std::span<const Point2> target,
                          const VertexRoleMask& mask) {
  check_sizes(pred, target, mask, "edge_point_loss");
  ValueGrad out;
  out.grad.assign(pred.size(), Point2{});
  const std::vector<int>& orig = mask.original_indices();
  for (std::size_t j = 0; j + 1 < orig.size(); ++j) {
    const Point2 a = target[static_cast<std::size_t>(orig[j])];
    const Point2 b = target[static_cast<std::size_t>(orig[j + 1])];
    const Point2 ab = b - a;
    const double len2 = squared_norm(ab);
    for (const int k : mask.inserted_on_edge()[j]) {
      const std::size_t i = static_cast<std::size_t>(k);
      const Point2 v = pred[i];
      double t = len2 > 0.0 ? dot(v - a, ab) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const Point2 foot = a + t * ab;
      const double d = distance(v, foot);
      out.value += d;
      if (d > kDegenerateEdge) {
        out.grad[i] = (1.0 / d) * (v - foot);
      }
    }
  }
  return out;
}

ValueGrad edge_slope_loss(std::span<const Point2> pred, std::span<const Point2> target,
                          const VertexRoleMask& mask) {
  check_sizes(pred, target, mask, "edge_slope_loss");
  ValueGrad out;
  out.grad.assign(pred.size(), Point2{});
  const std::vector<int>& orig = mask.original_indices();
  for (std::size_t j = 0; j + 1 < orig.size(); ++j) {
    const std::size_t ia = static_cast<std::size_t>(orig[j]);
    const std::size_t ib = static_cast<std::size_t>(orig[j + 1]);
    const Point2 e = pred[ib] - pred[ia];
    const double len = norm(e);
    if (len < kDegenerateEdge) {
      throw std::invalid_argument("edge_slope_loss: degenerate predicted edge");
    }
    const Point2 te = target[ib] - target[ia];
    const double tlen = norm(te);
    if (tlen < kDegenerateEdge) {
      throw std::invalid_argument("edge_slope_loss: degenerate target edge");
    }
    const Point2 u = (1.0 / tlen) * te;
    out.value += 1.0 - dot(e, u) / len;
    // d/de [e.u / |e|] = u/|e| - (e.u) e / |e|^3
    const double inv = 1.0 / len;
    const Point2 g = -1.0 * (inv * u - (dot(e, u) * inv * inv * inv) * e);
    out.grad[ia] -= g;
    out.grad[ib] += g;
  }
  return out;
}

ValueGrad edge_angle_loss(std::span<const Point2> pred, std::span<const Point2> target,
                          const VertexRoleMask& mask) {
  check_sizes(pred, target, mask, "edge_angle_loss");
  if (mask.density() < 3) {
    throw std::invalid_argument("edge_angle_loss: density must be >= 3");
  }
  ValueGrad out;
  out.grad.assign(pred.size(), Point2{});
  const std::vector<int>& orig = mask.original_indices();
  for (std::size_t j = 0; j + 2 < orig.size(); ++j) {
    const std::size_t i0 = static_cast<std::size_t>(orig[j]);
    const std::size_t i1 = static_cast<std::size_t>(orig[j + 1]);
    const std::size_t i2 = static_cast<std::size_t>(orig[j + 2]);
    const Point2 e1 = pred[i1] - pred[i0];
    const Point2 e2 = pred[i2] - pred[i1];
    const double l1 = squared_norm(e1);
    const double l2 = squared_norm(e2);
    if (l1 < kDegenerateEdge * kDegenerateEdge || l2 < kDegenerateEdge * kDegenerateEdge) {
      throw std::invalid_argument("edge_angle_loss: degenerate predicted edge");
    }
    const Point2 t1 = target[i1] - target[i0];
    const Point2 t2 = target[i2] - target[i1];
    if (squared_norm(t1) < kDegenerateEdge * kDegenerateEdge ||
        squared_norm(t2) < kDegenerateEdge * kDegenerateEdge) {
      throw std::invalid_argument("edge_angle_loss: degenerate target edge");
    }
    const double pred_turn = std::atan2(cross(e1, e2), dot(e1, e2));
    const double target_turn = std::atan2(cross(t1, t2), dot(t1, t2));
    const double delta = pred_turn - target_turn;
    out.value += 1.0 - std::cos(delta);

    // d theta / d e for the edge angle atan2(ey, ex) is (-ey, ex) / |e|^2;
    // pred_turn = angle(e2) - angle(e1).
    const double s = std::sin(delta);
    const Point2 d_e1 = (s / l1) * Point2{e1.y, -e1.x};
    const Point2 d_e2 = (s / l2) * Point2{-e2.y, e2.x};
    out.grad[i0] -= d_e1;
    out.grad[i1] += d_e1 - d_e2;
    out.grad[i2] += d_e2;
  }
  return out;
}

FocalGrad focal_loss(const std::array<double, kCategoryCount>& logits,
                     ElementCategory truth, double alpha, double gamma) {
  for (double l : logits) {
    if (!std::isfinite(l)) throw std::invalid_argument("focal_loss: non-finite logit");
  }
  const std::array<double, kCategoryCount> p = softmax(logits);
  const int t = static_cast<int>(truth);
  const double pt = std::max(p[t], 1e-300);
  const double one_minus = 1.0 - pt;
  FocalGrad out;
  out.value = -alpha * std::pow(one_minus, gamma) * std::log(pt);
  // dL/dpt, then chain through softmax: dpt/dl_k = pt * (delta_tk - p_k).
  const double dl_dpt = -alpha * (-gamma * std::pow(one_minus, gamma - 1.0) * std::log(pt) +
                                  std::pow(one_minus, gamma) / pt);
  for (int k = 0; k < kCategoryCount; ++k) {
    const double delta = k == t ? 1.0 : 0.0;
    out.grad[k] = dl_dpt * pt * (delta - p[k]);
  }
  return out;
}

LossBreakdown polyline_loss(std::span<const Point2> pred, std::span<const Point2> target,
                            const VertexRoleMask& mask, const LossWeights& w) {
  const ValueGrad v = vertex_loss(pred, target, mask);
  const ValueGrad ep = edge_point_loss(pred, target, mask);
  const ValueGrad es = edge_slope_loss(pred, target, mask);
  ValueGrad ea;
  ea.grad.assign(pred.size(), Point2{});
  if (mask.density() >= 3) ea = edge_angle_loss(pred, target, mask);

  LossBreakdown out;
  out.vertex = v.value;
  out.edge_point = ep.value;
  out.edge_slope = es.value;
  out.edge_angle = ea.value;
  out.total = w.lambda_v * v.value + w.lambda_p * ep.value + w.lambda_s * es.value +
              w.lambda_a * ea.value;
  out.vertex_grad.assign(pred.size(), Point2{});
  for (std::size_t i = 0; i < pred.size(); ++i) {
    out.vertex_grad[i] = w.lambda_v * v.grad[i] + w.lambda_p * ep.grad[i] +
                         w.lambda_s * es.grad[i] + w.lambda_a * ea.grad[i];
  }
  return out;
}

}  // namespace vecmap
