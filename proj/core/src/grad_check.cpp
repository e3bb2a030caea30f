// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include "vecmap/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "vecmap/losses.hpp"
#include "vecmap/random.hpp"

namespace vecmap {

namespace {

struct Case {
  std::vector<Point2> pred;
  std::vector<Point2> target;
  VertexRoleMask mask;
};

// Gentle random chain: heading random-walks so edges stay well separated
// from degeneracy, vertex spacing in [0.8, 2.5] m.
std::vector<Point2> random_chain(Rng& rng, int d) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(d));
  Point2 cur{rng.uniform(-10.0, 10.0), rng.uniform(-20.0, 20.0)};
  double heading = rng.uniform(0.0, 6.283185307179586);
  for (int i = 0; i < d; ++i) {
    pts.push_back(cur);
    heading += rng.uniform(-0.6, 0.6);
    const double step = rng.uniform(0.8, 2.5);
    cur += step * Point2{std::cos(heading), std::sin(heading)};
  }
  return pts;
}

Case random_case(Rng& rng, int d) {
  std::vector<Point2> target = random_chain(rng, d);
  std::vector<Point2> pred(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    pred[i] = target[i] + Point2{rng.uniform(-0.75, 0.75), rng.uniform(-0.75, 0.75)};
  }
  const bool doubled = d >= 3 && d % 2 == 1 && rng.uniform() < 0.5;
  VertexRoleMask mask = doubled ? VertexRoleMask::midpoint_doubling((d + 1) / 2)
                                : VertexRoleMask::all_original(d);
  return Case{std::move(pred), std::move(target), std::move(mask)};
}

// Marks coordinates too close to a kink of the given loss term to trust a
// finite difference there.
std::vector<char> smooth_coordinates(const Case& c, const std::string& component,
                                     double exclusion) {
  const std::size_t d = c.pred.size();
  std::vector<char> ok(2 * d, 1);
  auto exclude_vertex = [&ok](std::size_t i) {
    ok[2 * i] = 0;
    ok[2 * i + 1] = 0;
  };
  if (component == "vertex") {
    for (const int o : c.mask.original_indices()) {
      const std::size_t i = static_cast<std::size_t>(o);
      if (std::abs(c.pred[i].x - c.target[i].x) < exclusion) ok[2 * i] = 0;
      if (std::abs(c.pred[i].y - c.target[i].y) < exclusion) ok[2 * i + 1] = 0;
    }
  } else if (component == "edge_point") {
    const std::vector<int>& orig = c.mask.original_indices();
    for (std::size_t j = 0; j + 1 < orig.size(); ++j) {
      const Point2 a = c.target[static_cast<std::size_t>(orig[j])];
      const Point2 b = c.target[static_cast<std::size_t>(orig[j + 1])];
      const Point2 ab = b - a;
      const double len = norm(ab);
      for (const int k : c.mask.inserted_on_edge()[j]) {
        const std::size_t i = static_cast<std::size_t>(k);
        const double s = dot(c.pred[i] - a, ab) / len;  // arclength along edge
        const double t = std::clamp(s / len, 0.0, 1.0);
        const double dist = distance(c.pred[i], a + t * ab);
        if (std::abs(s) < exclusion || std::abs(s - len) < exclusion || dist < exclusion) {
          exclude_vertex(i);
        }
      }
    }
  } else {  // slope and angle terms are smooth away from degenerate edges
    const std::vector<int>& orig = c.mask.original_indices();
    for (std::size_t j = 0; j + 1 < orig.size(); ++j) {
      const std::size_t ia = static_cast<std::size_t>(orig[j]);
      const std::size_t ib = static_cast<std::size_t>(orig[j + 1]);
      if (distance(c.pred[ia], c.pred[ib]) < 1e-4) {
        exclude_vertex(ia);
        exclude_vertex(ib);
      }
    }
  }
  return ok;
}

void check_component(const std::string& name,
                     const std::function<ValueGrad(std::span<const Point2>)>& eval,
                     const Case& c, const GradCheckConfig& config,
                     GradCheckReport::Component& out) {
  const ValueGrad analytic = eval(c.pred);
  const std::vector<char> ok = smooth_coordinates(c, name, config.exclusion);
  std::vector<Point2> perturbed = c.pred;
  for (std::size_t i = 0; i < c.pred.size(); ++i) {
    for (int axis = 0; axis < 2; ++axis) {
      if (!ok[2 * i + static_cast<std::size_t>(axis)]) {
        ++out.skipped;
        continue;
      }
      double& coord = axis == 0 ? perturbed[i].x : perturbed[i].y;
      const double saved = coord;
      coord = saved + config.step;
      const double plus = eval(perturbed).value;
      coord = saved - config.step;
      const double minus = eval(perturbed).value;
      coord = saved;
      const double numeric = (plus - minus) / (2.0 * config.step);
      const double a = axis == 0 ? analytic.grad[i].x : analytic.grad[i].y;
      const double rel =
          std::abs(a - numeric) / std::max({1.0, std::abs(a), std::abs(numeric)});
      out.max_rel_err = std::max(out.max_rel_err, rel);
      ++out.checked;
      if (rel >= config.tolerance) ++out.failed;
    }
  }
}

}  // namespace

GradCheckReport run_gradient_checks(const GradCheckConfig& config) {
  GradCheckReport report;
  report.components = {{"vertex", 0, 0, 0, 0.0},
                       {"edge_point", 0, 0, 0, 0.0},
                       {"edge_slope", 0, 0, 0, 0.0},
                       {"edge_angle", 0, 0, 0, 0.0},
                       {"focal", 0, 0, 0, 0.0}};
  Rng rng(config.seed);
  for (const int d : config.densities) {
    for (int trial = 0; trial < config.trials; ++trial) {
      const Case c = random_case(rng, d);
      check_component(
          "vertex",
          [&](std::span<const Point2> p) { return vertex_loss(p, c.target, c.mask); }, c,
          config, report.components[0]);
      check_component(
          "edge_point",
          [&](std::span<const Point2> p) { return edge_point_loss(p, c.target, c.mask); },
          c, config, report.components[1]);
      check_component(
          "edge_slope",
          [&](std::span<const Point2> p) { return edge_slope_loss(p, c.target, c.mask); },
          c, config, report.components[2]);
      if (d >= 3) {
        check_component(
            "edge_angle",
            [&](std::span<const Point2> p) { return edge_angle_loss(p, c.target, c.mask); },
            c, config, report.components[3]);
      }

      // Focal: independent random logits and truth per trial.
      std::array<double, kCategoryCount> logits;
      for (double& l : logits) l = 2.0 * rng.normal();
      const ElementCategory truth =
          static_cast<ElementCategory>(rng.uniform_int(0, kCategoryCount - 1));
      const FocalGrad analytic = focal_loss(logits, truth);
      GradCheckReport::Component& focal = report.components[4];
      for (int k = 0; k < kCategoryCount; ++k) {
        std::array<double, kCategoryCount> p = logits;
        p[k] = logits[k] + config.step;
        const double plus = focal_loss(p, truth).value;
        p[k] = logits[k] - config.step;
        const double minus = focal_loss(p, truth).value;
        const double numeric = (plus - minus) / (2.0 * config.step);
        const double rel = std::abs(analytic.grad[k] - numeric) /
                           std::max({1.0, std::abs(analytic.grad[k]), std::abs(numeric)});
        focal.max_rel_err = std::max(focal.max_rel_err, rel);
        ++focal.checked;
        if (rel >= config.tolerance) ++focal.failed;
      }
    }
  }
  report.passed = true;
  for (const auto& c : report.components) {
    if (c.failed > 0 || c.checked == 0) report.passed = false;
  }
  return report;
}

std::string to_string(const GradCheckReport& report) {
  std::string out;
  char buf[160];
  for (const auto& c : report.components) {
    std::snprintf(buf, sizeof(buf), "%-11s checked %7ld  skipped %6ld  failed %4ld  max rel err %.3e\n",
                  c.name.c_str(), c.checked, c.skipped, c.failed, c.max_rel_err);
    out += buf;
  }
  out += report.passed ? "gradient check: PASS\n" : "gradient check: FAIL\n";
  return out;
}

}  // namespace vecmap
