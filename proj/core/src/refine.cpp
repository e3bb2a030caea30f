// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include "vecmap/refine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vecmap/random.hpp"

namespace vecmap {

namespace {

constexpr double kPi = 3.14159265358979323846;

double step_multiplier(const FitConfig& config, int step) {
  if (config.decay == StepDecay::kNone || config.steps_per_layer <= 1) return 1.0;
  const double t = static_cast<double>(step) / (config.steps_per_layer - 1);
  const double cosine = 0.5 * (1.0 + std::cos(kPi * t));
  return config.decay_floor + (1.0 - config.decay_floor) * cosine;
}

VertexRoleMask layer_mask(const FitConfig& config, int layer) {
  const int d = config.schedule[static_cast<std::size_t>(layer)];
  if (layer == 0 || config.schedule[static_cast<std::size_t>(layer - 1)] == d) {
    return VertexRoleMask::all_original(d);
  }
  return VertexRoleMask::midpoint_doubling(config.schedule[static_cast<std::size_t>(layer - 1)]);
}

bool lex_less(const Point2& a, const Point2& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// Fitted shapes are reported up to an equivalence ordering; pick a fixed
// representative so runs that converge to the same vertex set serialize
// identically. Open chains start at the lexicographically smaller endpoint;
// closed ones start at the lexicographically smallest vertex and run
// counterclockwise.
Polyline canonical_orientation(const Polyline& p) {
  std::vector<Point2> v = p.vertices();
  if (!p.closed()) {
    if (lex_less(v.back(), v.front())) std::reverse(v.begin(), v.end());
    return Polyline(std::move(v), false);
  }
  double area2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    area2 += cross(v[i], v[(i + 1) % v.size()]);
  }
  if (area2 < 0.0) std::reverse(v.begin(), v.end());
  std::size_t start = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (lex_less(v[i], v[start])) start = i;
  }
  std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(start), v.end());
  return Polyline(std::move(v), true);
}

}  // namespace

void FitConfig::validate() const {
  if (candidate_count < 1 || steps_per_layer < 1 || rematch_every < 1) {
    throw std::invalid_argument("FitConfig: counts must be >= 1");
  }
  if (!(step_size > 0.0)) throw std::invalid_argument("FitConfig: step_size must be > 0");
  if (schedule[0] < 3) {
    throw std::invalid_argument("FitConfig: schedule must start at density >= 3");
  }
}

std::vector<PredictedElement> init_candidates(const FitConfig& config,
                                              const PerceptionRange& range) {
  config.validate();
  if (!range.valid()) throw std::invalid_argument("init_candidates: invalid range");
  Rng rng(Rng::derive(config.seed, 0xca4d));
  const int d = config.schedule[0];
  std::vector<PredictedElement> candidates;
  candidates.reserve(static_cast<std::size_t>(config.candidate_count));
  for (int i = 0; i < config.candidate_count; ++i) {
    const Point2 center{rng.uniform(range.x_min, range.x_max),
                        rng.uniform(range.y_min, range.y_max)};
    const double heading = rng.uniform(0.0, 2.0 * kPi);
    const double half_len = 0.5 * rng.uniform(2.0, 6.0);
    const Point2 dir{std::cos(heading), std::sin(heading)};
    Point2 a = center - half_len * dir;
    Point2 b = center + half_len * dir;
    a.x = std::clamp(a.x, range.x_min, range.x_max);
    a.y = std::clamp(a.y, range.y_min, range.y_max);
    b.x = std::clamp(b.x, range.x_min, range.x_max);
    b.y = std::clamp(b.y, range.y_min, range.y_max);
    PredictedElement c;
    c.vertices.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      const double u = static_cast<double>(j) / (d - 1);
      c.vertices[static_cast<std::size_t>(j)] = a + u * (b - a);
    }
    candidates.push_back(std::move(c));
  }
  return candidates;
}

FitState fit_layer(FitState state, const std::vector<MatchTarget>& targets,
                   const FitConfig& config) {
  config.validate();
  const int layer = state.layer;
  const int density = config.schedule[static_cast<std::size_t>(layer)];
  for (const PredictedElement& c : state.candidates) {
    if (static_cast<int>(c.vertices.size()) != density) {
      throw std::invalid_argument("fit_layer: candidate density does not match layer");
    }
  }
  for (const MatchTarget& t : targets) {
    if (static_cast<int>(t.vertices.size()) != density) {
      throw std::invalid_argument("fit_layer: target density does not match layer");
    }
  }
  const VertexRoleMask mask = layer_mask(config, layer);
  const std::size_t n = state.candidates.size();

  for (int step = 0; step < config.steps_per_layer; ++step) {
    if (step % config.rematch_every == 0) {
      state.assignment = match(state.candidates, targets);
    }
    const Assignment& assign = state.assignment;

    // Prediction index -> matched real slot (or -1).
    std::vector<int> slot_for_pred(n, -1);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      slot_for_pred[static_cast<std::size_t>(assign.pred_for_slot[i])] =
          static_cast<int>(i);
    }

    TrajectoryRow row;
    row.step = state.global_step;
    row.layer = layer;
    const double h = config.step_size * step_multiplier(config, step);
    const LossWeights& w = config.weights;

    // Vertex moves use the proximal form of the fixed step: the L1 vertex
    // and edge-point pulls are clipped at their kinks (never overshooting
    // the target coordinate or the ground-truth edge), the smooth slope
    // and angle terms take a plain gradient step. The exact target
    // configuration is then a true fixed point.
    std::vector<std::vector<Point2>> vertex_moves(n);
    std::vector<std::array<double, kCategoryCount>> logit_updates(n);
    for (std::size_t k = 0; k < n; ++k) {
      const PredictedElement& cand = state.candidates[k];
      const int slot = slot_for_pred[k];
      if (slot >= 0) {
        const MatchTarget& target = targets[static_cast<std::size_t>(slot)];
        const std::vector<Point2> aligned = apply_ordering(
            target.vertices, assign.target_ordering[static_cast<std::size_t>(slot)]);
        const ValueGrad v = vertex_loss(cand.vertices, aligned, mask);
        const ValueGrad ep = edge_point_loss(cand.vertices, aligned, mask);
        const ValueGrad es = edge_slope_loss(cand.vertices, aligned, mask);
        ValueGrad ea;
        ea.grad.assign(cand.vertices.size(), Point2{});
        if (mask.density() >= 3) ea = edge_angle_loss(cand.vertices, aligned, mask);

        row.vertex += v.value;
        row.edge_point += ep.value;
        row.edge_slope += es.value;
        row.edge_angle += ea.value;
        row.total += w.lambda_v * v.value + w.lambda_p * ep.value +
                     w.lambda_s * es.value + w.lambda_a * ea.value;

        std::vector<Point2>& move = vertex_moves[k];
        move.assign(cand.vertices.size(), Point2{});
        for (const int o : mask.original_indices()) {
          const std::size_t i = static_cast<std::size_t>(o);
          const Point2 r = cand.vertices[i] - aligned[i];
          move[i].x = v.grad[i].x * std::min(w.lambda_v * h, std::abs(r.x));
          move[i].y = v.grad[i].y * std::min(w.lambda_v * h, std::abs(r.y));
        }
        const std::vector<int>& orig = mask.original_indices();
        for (std::size_t j = 0; j + 1 < orig.size(); ++j) {
          const Point2 chord_a = aligned[static_cast<std::size_t>(orig[j])];
          const Point2 chord_b = aligned[static_cast<std::size_t>(orig[j + 1])];
          const Segment gt_edge(chord_a, chord_b);
          for (const int ins : mask.inserted_on_edge()[j]) {
            const std::size_t i = static_cast<std::size_t>(ins);
            double dist = point_segment_distance(cand.vertices[i], gt_edge);
            const Point2 ab = chord_b - chord_a;
            const double t_raw = dot(cand.vertices[i] - chord_a, ab) / squared_norm(ab);
            if (t_raw < 0.0 || t_raw > 1.0) {
              // Clamped regime pulls toward a chord endpoint, which is an
              // original vertex's target: keep a standoff so two chain
              // vertices never land on the same point.
              dist = std::max(0.0, dist - 1e-6);
            }
            move[i] += std::min(w.lambda_p * h, dist) * ep.grad[i];
          }
        }
        for (std::size_t i = 0; i < cand.vertices.size(); ++i) {
          Point2 smooth = w.lambda_s * es.grad[i] + w.lambda_a * ea.grad[i];
          // Slope/angle gradients scale with the inverse chord length;
          // cap the step so near-degenerate chords cannot catapult.
          const double cap = w.lambda_v;
          const double mag = norm(smooth);
          if (mag > cap) smooth = (cap / mag) * smooth;
          move[i] += h * smooth;
        }

        const FocalGrad cls = focal_loss(cand.logits, target.category);
        row.cls += cls.value;
        row.total += w.lambda_cls * cls.value;
        for (int c = 0; c < kCategoryCount; ++c) {
          logit_updates[k][c] = w.lambda_cls * cls.grad[c];
        }
      } else {
        const FocalGrad cls = focal_loss(cand.logits, ElementCategory::kNone);
        row.cls += cls.value;
        row.total += w.lambda_cls * cls.value;
        for (int c = 0; c < kCategoryCount; ++c) {
          logit_updates[k][c] = w.lambda_cls * cls.grad[c];
        }
      }
    }

    if (!std::isfinite(row.total)) {
      state.trajectory.push_back(row);
      throw DivergenceError("fit_layer: non-finite total loss at step " +
                                std::to_string(state.global_step),
                            state.trajectory);
    }
    state.trajectory.push_back(row);

    for (std::size_t k = 0; k < n; ++k) {
      PredictedElement& cand = state.candidates[k];
      if (!vertex_moves[k].empty()) {
        for (std::size_t j = 0; j < cand.vertices.size(); ++j) {
          cand.vertices[j] -= vertex_moves[k][j];
        }
      }
      for (int c = 0; c < kCategoryCount; ++c) {
        cand.logits[c] -= h * logit_updates[k][c];
      }
    }
    ++state.global_step;
  }
  return state;
}

FitState densify_candidates(FitState state, const FitConfig& config) {
  const int layer = state.layer;
  if (layer + 1 >= static_cast<int>(config.schedule.layers())) {
    throw std::invalid_argument("densify_candidates: already at the last layer");
  }
  const int d = config.schedule[static_cast<std::size_t>(layer)];
  const int next = config.schedule[static_cast<std::size_t>(layer + 1)];
  if (next == d) {
    state.layer += 1;
    return state;
  }
  if (next != 2 * d - 1) {
    throw std::invalid_argument("densify_candidates: schedule violates the 2d-1 rule");
  }
  for (PredictedElement& cand : state.candidates) {
    std::vector<Point2> dense;
    dense.reserve(static_cast<std::size_t>(next));
    for (std::size_t j = 0; j + 1 < cand.vertices.size(); ++j) {
      dense.push_back(cand.vertices[j]);
      dense.push_back(0.5 * (cand.vertices[j] + cand.vertices[j + 1]));
    }
    dense.push_back(cand.vertices.back());
    cand.vertices = std::move(dense);
  }
  state.layer += 1;
  return state;
}

FitResult progressive_fit(const GroundTruthSet& scene, const PerceptionRange& range,
                          const FitConfig& config) {
  config.validate();
  if (static_cast<int>(scene.size()) > config.candidate_count) {
    throw std::invalid_argument("progressive_fit: more targets than candidates");
  }
  FitState state;
  state.candidates = init_candidates(config, range);

  FitResult result;
  for (std::size_t layer = 0; layer < config.schedule.layers(); ++layer) {
    if (layer > 0) state = densify_candidates(std::move(state), config);
    const int d = config.schedule[layer];
    const std::vector<MatchTarget> targets = make_targets(scene, d);
    state = fit_layer(std::move(state), targets, config);

    LayerResult snapshot;
    snapshot.layer = static_cast<int>(layer);
    snapshot.density = d;
    snapshot.candidates = state.candidates;
    snapshot.assignment = state.assignment;
    snapshot.final_losses = state.trajectory.empty() ? TrajectoryRow{} : state.trajectory.back();
    result.layers.push_back(std::move(snapshot));
  }
  result.trajectory = state.trajectory;

  for (const PredictedElement& cand : state.candidates) {
    const std::array<double, kCategoryCount> p = cand.probabilities();
    if (p[static_cast<int>(ElementCategory::kNone)] >= 0.5) continue;
    int best = 0;
    for (int c = 1; c < kCategoryCount - 1; ++c) {
      if (p[c] > p[best]) best = c;
    }
    const ElementCategory category = static_cast<ElementCategory>(best);
    const bool closed = category == ElementCategory::kPedCrossing;
    // Collapse any coincident consecutive vertices left by the descent so
    // the instance forms a valid chain; drop it if too few remain.
    std::vector<Point2> verts;
    for (const Point2& v : cand.vertices) {
      if (verts.empty() || distance(verts.back(), v) > kMinEdgeLength) verts.push_back(v);
    }
    while (closed && verts.size() > 1 &&
           distance(verts.front(), verts.back()) <= kMinEdgeLength) {
      verts.pop_back();
    }
    if (verts.size() < (closed ? 3u : 2u)) continue;
    result.final_map.emplace_back(category, p[best],
                                  canonical_orientation(Polyline(std::move(verts), closed)));
  }
  return result;
}

std::string trajectory_to_csv(const std::vector<TrajectoryRow>& trajectory) {
  std::string out = "step,layer,vertex,edge_point,edge_slope,edge_angle,cls,total\n";
  char buf[256];
  for (const TrajectoryRow& r : trajectory) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", r.step,
                  r.layer, r.vertex, r.edge_point, r.edge_slope, r.edge_angle, r.cls,
                  r.total);
    out += buf;
  }
  return out;
}

}  // namespace vecmap
