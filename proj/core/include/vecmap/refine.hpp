// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecmap/eval.hpp"
#include "vecmap/losses.hpp"
#include "vecmap/matching.hpp"
#include "vecmap/scenegen.hpp"

namespace vecmap {

enum class StepDecay { kNone, kCosine };

struct FitConfig {
  DensitySchedule schedule = DensitySchedule::standard();
  int candidate_count = 50;
  int steps_per_layer = 200;
  double step_size = 0.05;
  std::uint64_t seed = 0;
  int rematch_every = 1;
  StepDecay decay = StepDecay::kCosine;
  double decay_floor = 0.02;  // fraction of step_size reached at layer end
  LossWeights weights;

  void validate() const;
};

struct TrajectoryRow {
  int step = 0;   // global step index across layers
  int layer = 0;
  double vertex = 0.0;
  double edge_point = 0.0;
  double edge_slope = 0.0;
  double edge_angle = 0.0;
  double cls = 0.0;
  double total = 0.0;
};

struct FitState {
  std::vector<PredictedElement> candidates;
  int layer = 0;
  int global_step = 0;
  std::vector<TrajectoryRow> trajectory;
  Assignment assignment;
};

struct LayerResult {
  int layer = 0;
  int density = 0;
  std::vector<PredictedElement> candidates;
  Assignment assignment;
  TrajectoryRow final_losses;
};

struct FitResult {
  std::vector<LayerResult> layers;
  std::vector<TrajectoryRow> trajectory;
  PredictionSet final_map;
};

/// Thrown when the total loss goes non-finite; carries the trajectory up
/// to the failing step.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::vector<TrajectoryRow> trajectory)
      : std::runtime_error(what), trajectory_(std::move(trajectory)) {}
  const std::vector<TrajectoryRow>& trajectory() const { return trajectory_; }

 private:
  std::vector<TrajectoryRow> trajectory_;
};

/// Candidates at the schedule's first density: short random chords placed
/// uniformly inside the perception range, uniform (zero) category logits.
std::vector<PredictedElement> init_candidates(const FitConfig& config,
                                              const PerceptionRange& range);

/// Runs steps_per_layer descent steps against the given layer targets:
/// rematch every rematch_every steps, matched candidates' vertices follow
/// the weighted polyline-loss gradient and their logits the focal gradient
/// for the matched category, unmatched candidates receive only the
/// none-category classification gradient.
FitState fit_layer(FitState state, const std::vector<MatchTarget>& targets,
                   const FitConfig& config);

/// Advances the state to the next layer: midpoint-densifies every
/// candidate when the schedule grows (next density must be 2d-1), leaves
/// them untouched when it stays equal. Logits are unchanged.
FitState densify_candidates(FitState state, const FitConfig& config);

/// Full coarse-to-fine fit of one scene. The final map keeps candidates
/// whose none-probability is below 0.5, classified by their best real
/// category with confidence equal to that category's probability.
FitResult progressive_fit(const GroundTruthSet& scene, const PerceptionRange& range,
                          const FitConfig& config);

/// Trajectory CSV: step,layer,vertex,edge_point,edge_slope,edge_angle,cls,total.
std::string trajectory_to_csv(const std::vector<TrajectoryRow>& trajectory);

}  // namespace vecmap
