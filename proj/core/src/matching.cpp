// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include "vecmap/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vecmap {

std::array<double, kCategoryCount> softmax(const std::array<double, kCategoryCount>& logits) {
  double max_logit = logits[0];
  for (double l : logits) max_logit = std::max(max_logit, l);
  std::array<double, kCategoryCount> p{};
  double sum = 0.0;
  for (int c = 0; c < kCategoryCount; ++c) {
    p[c] = std::exp(logits[c] - max_logit);
    sum += p[c];
  }
  for (int c = 0; c < kCategoryCount; ++c) p[c] /= sum;
  return p;
}

std::array<double, kCategoryCount> PredictedElement::probabilities() const {
  return softmax(logits);
}

double PredictedElement::none_probability() const {
  return probabilities()[static_cast<int>(ElementCategory::kNone)];
}

std::vector<MatchTarget> make_targets(const GroundTruthSet& gts, int d) {
  std::vector<MatchTarget> targets;
  targets.reserve(gts.size());
  for (const MapElement& e : gts) {
    targets.push_back(MatchTarget{e.category, element_at_density(e, d).vertices(),
                                  equivalent_permutations(e, d)});
  }
  return targets;
}

std::pair<double, std::vector<int>> polyline_match_cost(const PredictedElement& pred,
                                                        std::span<const Point2> target,
                                                        const PermutationSet& perms) {
  const std::size_t d = pred.vertices.size();
  if (target.size() != d) {
    throw std::invalid_argument("polyline_match_cost: density mismatch");
  }
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_idx = 0;
  for (std::size_t o = 0; o < perms.size(); ++o) {
    const std::vector<int>& ordering = perms[o];
    if (ordering.size() != d) {
      throw std::invalid_argument("polyline_match_cost: ordering size mismatch");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      sum += l1_distance(pred.vertices[j], target[static_cast<std::size_t>(ordering[j])]);
    }
    const double cost = sum / static_cast<double>(d);
    if (cost < best) {
      best = cost;
      best_idx = o;
    }
  }
  return {best, perms[best_idx]};
}

CostMatrix build_cost_matrix(const std::vector<PredictedElement>& preds,
                             const std::vector<MatchTarget>& targets) {
  const std::size_t n = preds.size();
  if (targets.size() > n) {
    throw std::invalid_argument("build_cost_matrix: more targets than predictions");
  }
  CostMatrix m;
  m.n = n;
  m.real_rows = targets.size();
  m.cost.assign(n * n, 0.0);
  m.cell_ordering.assign(m.real_rows * n, {});
  for (std::size_t i = 0; i < m.real_rows; ++i) {
    const MatchTarget& t = targets[i];
    for (std::size_t k = 0; k < n; ++k) {
      auto [geo_cost, ordering] = polyline_match_cost(preds[k], t.vertices, t.perms);
      const double p = preds[k].probabilities()[static_cast<int>(t.category)];
      m.cost[i * n + k] = -p + geo_cost;
      m.cell_ordering[i * n + k] = std::move(ordering);
    }
  }
  return m;
}

Assignment hungarian(const CostMatrix& costs) {
  const std::size_t n = costs.n;
  if (n == 0 || costs.cost.size() != n * n) {
    throw std::invalid_argument("hungarian: matrix is not square");
  }
  for (double c : costs.cost) {
    if (!std::isfinite(c)) throw std::invalid_argument("hungarian: non-finite cost");
  }

  // Shortest augmenting path formulation with potentials, 1-based helpers.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = costs.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment a;
  a.pred_for_slot.assign(n, -1);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) a.pred_for_slot[p[j] - 1] = static_cast<int>(j - 1);
  }
  a.total_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a.total_cost += costs.at(i, static_cast<std::size_t>(a.pred_for_slot[i]));
  }
  return a;
}

Assignment match(const std::vector<PredictedElement>& preds,
                 const std::vector<MatchTarget>& targets) {
  const CostMatrix m = build_cost_matrix(preds, targets);
  Assignment a = hungarian(m);
  a.target_ordering.resize(m.real_rows);
  for (std::size_t i = 0; i < m.real_rows; ++i) {
    a.target_ordering[i] =
        m.ordering_at(i, static_cast<std::size_t>(a.pred_for_slot[i]));
  }
  return a;
}

}  // namespace vecmap
