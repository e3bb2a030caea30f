// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vecmap/hsmr.hpp"

namespace vecmap {

struct ChamferParams {
  int sample_count = 100;  // dense resampling before distance computation
};

/// One scored prediction instance as written to a prediction map file.
struct PredictedInstance {
  ElementCategory category = ElementCategory::kNone;
  double confidence = 0.0;
  Polyline shape;

  PredictedInstance(ElementCategory category_, double confidence_, Polyline shape_)
      : category(category_), confidence(confidence_), shape(std::move(shape_)) {}
};

using PredictionSet = std::vector<PredictedInstance>;

/// One prediction's contribution to a PR curve.
struct Detection {
  double confidence = 0.0;
  bool true_positive = false;
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

struct APResult {
  ElementCategory category = ElementCategory::kNone;
  double threshold = 0.0;
  std::optional<double> ap;  // empty when the category has no ground truth
  std::vector<PrPoint> pr_curve;
  std::size_t tp_count = 0;
  std::size_t fp_count = 0;
  std::size_t gt_count = 0;
};

struct MapScore {
  std::vector<APResult> per_threshold;        // category x threshold
  std::vector<std::optional<double>> per_category;  // mean over thresholds
  std::optional<double> map;                  // mean over categories with GT
  std::vector<std::string> warnings;
};

/// Symmetric sampled Chamfer distance: both chains are resampled to
/// sample_count points, then 0.5 * (mean nearest-sample distance a->b +
/// mean nearest-sample distance b->a).
double chamfer_distance(const Polyline& a, const Polyline& b,
                        const ChamferParams& params = {});

/// Greedy descending-confidence matching within one scene and category:
/// a prediction is a true positive if some still-unmatched ground-truth
/// element of the same category lies within the Chamfer threshold.
std::vector<Detection> match_instances(const PredictionSet& preds,
                                       const GroundTruthSet& gts,
                                       ElementCategory category, double threshold,
                                       const ChamferParams& params = {});

/// All-point interpolated average precision: the precision envelope
/// (running max from the lowest confidence up) summed at each true
/// positive, divided by the ground-truth count.
APResult average_precision(std::vector<Detection> detections, std::size_t total_gt);

/// Full protocol over aligned scene lists: per category, AP at each
/// threshold pooled across scenes; per-category score is the mean over
/// thresholds and mAP the mean over categories that have ground truth.
MapScore map_score(const std::vector<PredictionSet>& pred_scenes,
                   const std::vector<GroundTruthSet>& gt_scenes,
                   const std::vector<double>& thresholds = {0.5, 1.0, 1.5},
                   const ChamferParams& params = {});

std::string to_text_table(const MapScore& score);
std::string to_csv(const MapScore& score);

}  // namespace vecmap
