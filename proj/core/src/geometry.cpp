// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include "vecmap/geometry.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace vecmap {

Segment::Segment(Point2 a_, Point2 b_) : a(a_), b(b_) {
  if (!is_finite(a) || !is_finite(b)) {
    throw std::invalid_argument("Segment: non-finite endpoint");
  }
  if (distance(a, b) <= kMinEdgeLength) {
    throw std::invalid_argument("Segment: degenerate (endpoints coincide)");
  }
}

Point2 Segment::direction() const {
  const double len = length();
  return {(b.x - a.x) / len, (b.y - a.y) / len};
}

Polyline::Polyline(std::vector<Point2> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
  const std::size_t min_size = closed_ ? 3 : 2;
  if (vertices_.size() < min_size) {
    throw std::invalid_argument("Polyline: needs at least " +
                                std::to_string(min_size) + " vertices");
  }
  for (const Point2& v : vertices_) {
    if (!is_finite(v)) throw std::invalid_argument("Polyline: non-finite vertex");
  }
  const std::size_t edges = closed_ ? vertices_.size() : vertices_.size() - 1;
  for (std::size_t i = 0; i < edges; ++i) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[(i + 1) % vertices_.size()];
    if (distance(a, b) <= kMinEdgeLength) {
      throw std::invalid_argument("Polyline: consecutive vertices coincide at index " +
                                  std::to_string(i));
    }
  }
}

Segment Polyline::edge(std::size_t i) const {
  return Segment(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
}

double arc_length(const Polyline& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.edge_count(); ++i) {
    total += distance(p[i], p[(i + 1) % p.size()]);
  }
  return total;
}

namespace {

// Distance to the chord (a, b), falling back to point distance when the
// chord is degenerate (possible for loop-back chains during RDP).
double chord_distance(const Point2& v, const Point2& a, const Point2& b) {
  const Point2 ab = b - a;
  const double len2 = squared_norm(ab);
  if (len2 <= kMinEdgeLength * kMinEdgeLength) return distance(v, a);
  const double t = std::clamp(dot(v - a, ab) / len2, 0.0, 1.0);
  return distance(v, a + t * ab);
}

// Marks kept indices of pts[first..last] (endpoints always kept).
void rdp_recurse(const std::vector<Point2>& pts, std::size_t first, std::size_t last,
                 double epsilon, std::vector<char>& keep) {
  if (last <= first + 1) return;
  double max_dist = 0.0;
  std::size_t split = first;
  for (std::size_t i = first + 1; i < last; ++i) {
    const double d = chord_distance(pts[i], pts[first], pts[last]);
    if (d > max_dist) {
      max_dist = d;
      split = i;
    }
  }
  if (max_dist > epsilon) {
    keep[split] = 1;
    rdp_recurse(pts, first, split, epsilon, keep);
    rdp_recurse(pts, split, last, epsilon, keep);
  }
}

std::vector<Point2> rdp_open(const std::vector<Point2>& pts, double epsilon) {
  std::vector<char> keep(pts.size(), 0);
  if (keep.empty()) return pts;
  keep.front() = 1;
  keep.back() = 1;
  rdp_recurse(pts, 0, pts.size() - 1, epsilon, keep);
  std::vector<Point2> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (keep[i]) out.push_back(pts[i]);
  }
  return out;
}

// Drops later members of coincident consecutive pairs so the result can be
// rebuilt as a valid Polyline.
std::vector<Point2> dedupe_consecutive(std::vector<Point2> pts, bool closed) {
  std::vector<Point2> out;
  out.reserve(pts.size());
  for (const Point2& v : pts) {
    if (out.empty() || distance(out.back(), v) > kMinEdgeLength) out.push_back(v);
  }
  while (closed && out.size() > 1 && distance(out.front(), out.back()) <= kMinEdgeLength) {
    out.pop_back();
  }
  return out;
}

}  // namespace

Polyline rdp_simplify(const Polyline& p, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("rdp_simplify: epsilon must be > 0");
  if (p.size() == 2) return p;

  const std::vector<Point2>& v = p.vertices();
  if (!p.closed()) {
    std::vector<Point2> out = dedupe_consecutive(rdp_open(v, epsilon), false);
    if (out.size() < 2) return p;
    return Polyline(std::move(out), false);
  }

  // Closed: anchor at vertex 0 and the vertex farthest from it, simplify
  // both arcs, then stitch back together in cyclic order.
  std::size_t far = 1;
  double far_dist = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = distance(v[0], v[i]);
    if (d > far_dist) {
      far_dist = d;
      far = i;
    }
  }
  std::vector<Point2> first_arc(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(far) + 1);
  std::vector<Point2> second_arc(v.begin() + static_cast<std::ptrdiff_t>(far), v.end());
  second_arc.push_back(v[0]);

  std::vector<Point2> kept = rdp_open(first_arc, epsilon);
  std::vector<Point2> back = rdp_open(second_arc, epsilon);
  kept.insert(kept.end(), back.begin() + 1, back.end() - 1);
  kept = dedupe_consecutive(std::move(kept), true);
  if (kept.size() < 3) return p;
  return Polyline(std::move(kept), true);
}

Polyline resample_uniform(const Polyline& p, int n) {
  const int min_n = p.closed() ? 3 : 2;
  if (n < min_n) {
    throw std::invalid_argument("resample_uniform: n below minimum for this chain");
  }
  const std::size_t m = p.size();
  const std::size_t edges = p.edge_count();
  std::vector<double> cum(edges + 1, 0.0);
  for (std::size_t i = 0; i < edges; ++i) {
    cum[i + 1] = cum[i] + distance(p[i], p[(i + 1) % m]);
  }
  const double total = cum.back();

  auto locate = [&](double t) -> Point2 {
    if (t <= 0.0) return p[0];
    if (t >= total) return p.closed() ? p[0] : p[m - 1];
    std::size_t k = static_cast<std::size_t>(
        std::upper_bound(cum.begin(), cum.end(), t) - cum.begin() - 1);
    if (k >= edges) k = edges - 1;
    const double u = (t - cum[k]) / (cum[k + 1] - cum[k]);
    return p[k] + u * (p[(k + 1) % m] - p[k]);
  };

  std::vector<Point2> out(static_cast<std::size_t>(n));
  if (p.closed()) {
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] =
          (i == 0) ? p[0] : locate(total * (static_cast<double>(i) / n));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      if (i == 0) {
        out[0] = p[0];
      } else if (i == n - 1) {
        out[static_cast<std::size_t>(i)] = p[m - 1];
      } else {
        out[static_cast<std::size_t>(i)] =
            locate(total * (static_cast<double>(i) / (n - 1)));
      }
    }
  }
  return Polyline(std::move(out), p.closed());
}

Polyline insert_by_edge_length(const Polyline& p, int n) {
  if (n <= static_cast<int>(p.size())) {
    throw std::invalid_argument("insert_by_edge_length: n must exceed current vertex count");
  }
  const std::size_t m = p.size();
  const std::size_t edges = p.edge_count();
  std::vector<double> len(edges);
  for (std::size_t i = 0; i < edges; ++i) {
    len[i] = distance(p[i], p[(i + 1) % m]);
  }

  // Largest remaining gap first; gap of edge i with k inserted points is
  // len[i] / (k + 1). Ties break to the lowest edge index.
  std::vector<int> inserted(edges, 0);
  auto cmp = [](const std::pair<double, std::size_t>& a,
                const std::pair<double, std::size_t>& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::priority_queue<std::pair<double, std::size_t>,
                      std::vector<std::pair<double, std::size_t>>, decltype(cmp)>
      gaps(cmp);
  for (std::size_t i = 0; i < edges; ++i) gaps.push({len[i], i});
  for (int extra = n - static_cast<int>(m); extra > 0; --extra) {
    auto [gap, i] = gaps.top();
    gaps.pop();
    inserted[i] += 1;
    gaps.push({len[i] / (inserted[i] + 1), i});
  }

  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges; ++i) {
    const Point2 a = p[i];
    const Point2 b = p[(i + 1) % m];
    out.push_back(a);
    for (int q = 1; q <= inserted[i]; ++q) {
      const double u = static_cast<double>(q) / (inserted[i] + 1);
      out.push_back(a + u * (b - a));
    }
  }
  if (!p.closed()) out.push_back(p[m - 1]);
  return Polyline(std::move(out), p.closed());
}

Polyline midpoint_densify(const Polyline& p) {
  const std::size_t m = p.size();
  std::vector<Point2> out;
  out.reserve(2 * m);
  for (std::size_t i = 0; i < p.edge_count(); ++i) {
    const Point2 a = p[i];
    const Point2 b = p[(i + 1) % m];
    out.push_back(a);
    out.push_back(0.5 * (a + b));
  }
  if (!p.closed()) out.push_back(p[m - 1]);
  return Polyline(std::move(out), p.closed());
}

double point_segment_distance(const Point2& v, const Segment& e) {
  const Point2 ab = e.b - e.a;
  const double t = std::clamp(dot(v - e.a, ab) / squared_norm(ab), 0.0, 1.0);
  return distance(v, e.a + t * ab);
}

double direction_cosine(const Segment& e1, const Segment& e2) {
  const double c = dot(e1.direction(), e2.direction());
  return std::clamp(c, -1.0, 1.0);
}

double turning_cosine(const Segment& prev, const Segment& next) {
  if (!(next.a == prev.b)) {
    throw std::invalid_argument("turning_cosine: segments are not adjacent");
  }
  return direction_cosine(prev, next);
}

}  // namespace vecmap
