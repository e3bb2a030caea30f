// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace vecmap {

/// BEV vehicle-frame point: x lateral, y longitudinal, meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr double kMinEdgeLength = 1e-9;

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
inline Point2& operator+=(Point2& a, Point2 b) {
  a.x += b.x;
  a.y += b.y;
  return a;
}
inline Point2& operator-=(Point2& a, Point2 b) {
  a.x -= b.x;
  a.y -= b.y;
  return a;
}
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double squared_norm(Point2 p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double l1_norm(Point2 p) { return std::abs(p.x) + std::abs(p.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline double l1_distance(Point2 a, Point2 b) { return l1_norm(b - a); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Directed edge with distinct endpoints.
struct Segment {
  Point2 a;
  Point2 b;

  Segment(Point2 a_, Point2 b_);
  double length() const { return distance(a, b); }
  Point2 direction() const;  // unit vector a -> b
};

/// Ordered vertex chain. Open chains have size >= 2; closed ones size >= 3
/// with the closing edge implicit (first vertex is never repeated at the
/// end). Consecutive vertices, including the wrap pair of a closed chain,
/// must be more than kMinEdgeLength apart; all coordinates finite.
class Polyline {
 public:
  Polyline(std::vector<Point2> vertices, bool closed = false);

  const std::vector<Point2>& vertices() const { return vertices_; }
  bool closed() const { return closed_; }
  std::size_t size() const { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }

  /// Edge count: size-1 for open chains, size for closed ones.
  std::size_t edge_count() const { return closed_ ? size() : size() - 1; }
  Segment edge(std::size_t i) const;

 private:
  std::vector<Point2> vertices_;
  bool closed_ = false;
};

/// Total length of the chain; closed chains include the wrap edge.
double arc_length(const Polyline& p);

/// Ramer-Douglas-Peucker simplification. Keeps a subset of the input
/// vertices such that every dropped vertex lies within epsilon of the
/// simplified chain. Open chains keep both endpoints. Closed chains are
/// split at vertex 0 and the vertex farthest from it; if that would leave
/// fewer than 3 vertices the input is returned unchanged.
Polyline rdp_simplify(const Polyline& p, double epsilon);

/// n vertices at equal arclength spacing. Open chains keep both endpoints
/// exactly (n >= 2); closed chains anchor at vertex 0 and spread n samples
/// over the perimeter (n >= 3).
Polyline resample_uniform(const Polyline& p, int n);

/// Grows the chain to n vertices, keeping every original vertex in order.
/// The n - size() new vertices go to edges by repeatedly picking the edge
/// with the largest remaining gap (ties to the lowest edge index) and are
/// placed at equal spacing within each edge. Requires n > size().
Polyline insert_by_edge_length(const Polyline& p, int n);

/// Inserts the midpoint of every edge: open d -> 2d-1 with originals at
/// even indices, closed d -> 2d including the wrap-edge midpoint.
Polyline midpoint_densify(const Polyline& p);

/// Euclidean distance from v to the closed segment (clamped to endpoints).
double point_segment_distance(const Point2& v, const Segment& e);

/// Cosine of the angle between the two segment directions, in [-1, 1].
double direction_cosine(const Segment& e1, const Segment& e2);

/// Cosine of the turning angle at the shared vertex: requires
/// next.a == prev.b exactly.
double turning_cosine(const Segment& prev, const Segment& next);

}  // namespace vecmap
