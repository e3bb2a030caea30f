// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include "vecmap/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vecmap {

namespace {

std::vector<Point2> chamfer_samples(const Polyline& p, int n) {
  const int min_n = p.closed() ? 3 : 2;
  return resample_uniform(p, std::max(n, min_n)).vertices();
}

double mean_nearest(const std::vector<Point2>& from, const std::vector<Point2>& to) {
  double sum = 0.0;
  for (const Point2& f : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& t : to) best = std::min(best, distance(f, t));
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

std::string format_ap(const std::optional<double>& ap) {
  if (!ap.has_value()) return "   n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%6.4f", *ap);
  return buf;
}

}  // namespace

double chamfer_distance(const Polyline& a, const Polyline& b, const ChamferParams& params) {
  if (params.sample_count < 2) {
    throw std::invalid_argument("chamfer_distance: sample_count must be >= 2");
  }
  const std::vector<Point2> sa = chamfer_samples(a, params.sample_count);
  const std::vector<Point2> sb = chamfer_samples(b, params.sample_count);
  return 0.5 * (mean_nearest(sa, sb) + mean_nearest(sb, sa));
}

std::vector<Detection> match_instances(const PredictionSet& preds, const GroundTruthSet& gts,
                                       ElementCategory category, double threshold,
                                       const ChamferParams& params) {
  std::vector<std::size_t> pred_idx;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].category == category) pred_idx.push_back(i);
  }
  std::vector<std::size_t> gt_idx;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    if (gts[i].category == category) gt_idx.push_back(i);
  }
  std::stable_sort(pred_idx.begin(), pred_idx.end(), [&](std::size_t a, std::size_t b) {
    return preds[a].confidence > preds[b].confidence;
  });

  std::vector<char> gt_taken(gt_idx.size(), 0);
  std::vector<Detection> out;
  out.reserve(pred_idx.size());
  for (const std::size_t pi : pred_idx) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_g = gt_idx.size();
    for (std::size_t g = 0; g < gt_idx.size(); ++g) {
      if (gt_taken[g]) continue;
      const double d = chamfer_distance(preds[pi].shape, gts[gt_idx[g]].shape, params);
      if (d < best) {
        best = d;
        best_g = g;
      }
    }
    Detection det;
    det.confidence = preds[pi].confidence;
    det.true_positive = best_g < gt_idx.size() && best < threshold;
    if (det.true_positive) gt_taken[best_g] = 1;
    out.push_back(det);
  }
  return out;
}

APResult average_precision(std::vector<Detection> detections, std::size_t total_gt) {
  APResult result;
  result.gt_count = total_gt;
  if (total_gt == 0) {
    result.ap = std::nullopt;
    result.fp_count = detections.size();
    return result;
  }
  std::stable_sort(detections.begin(), detections.end(),
                   [](const Detection& a, const Detection& b) {
                     return a.confidence > b.confidence;
                   });

  std::vector<double> precision(detections.size());
  std::size_t tp = 0;
  for (std::size_t k = 0; k < detections.size(); ++k) {
    if (detections[k].true_positive) ++tp;
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    result.pr_curve.push_back(
        {static_cast<double>(tp) / static_cast<double>(total_gt), precision[k]});
  }
  result.tp_count = tp;
  result.fp_count = detections.size() - tp;

  // Precision envelope: running max from the right.
  for (std::size_t k = detections.size(); k-- > 1;) {
    precision[k - 1] = std::max(precision[k - 1], precision[k]);
  }
  double ap_sum = 0.0;
  for (std::size_t k = 0; k < detections.size(); ++k) {
    if (detections[k].true_positive) ap_sum += precision[k];
  }
  result.ap = ap_sum / static_cast<double>(total_gt);
  return result;
}

MapScore map_score(const std::vector<PredictionSet>& pred_scenes,
                   const std::vector<GroundTruthSet>& gt_scenes,
                   const std::vector<double>& thresholds, const ChamferParams& params) {
  if (pred_scenes.size() != gt_scenes.size()) {
    throw std::invalid_argument("map_score: scene lists are not aligned");
  }
  MapScore score;
  double category_sum = 0.0;
  std::size_t category_n = 0;
  for (const ElementCategory cat : kRealCategories) {
    std::size_t total_gt = 0;
    for (const GroundTruthSet& gts : gt_scenes) {
      for (const MapElement& e : gts) {
        if (e.category == cat) ++total_gt;
      }
    }
    double threshold_sum = 0.0;
    bool has_gt = total_gt > 0;
    for (const double tau : thresholds) {
      std::vector<Detection> pooled;
      for (std::size_t s = 0; s < pred_scenes.size(); ++s) {
        std::vector<Detection> scene =
            match_instances(pred_scenes[s], gt_scenes[s], cat, tau, params);
        pooled.insert(pooled.end(), scene.begin(), scene.end());
      }
      APResult ap = average_precision(std::move(pooled), total_gt);
      ap.category = cat;
      ap.threshold = tau;
      if (ap.ap.has_value()) threshold_sum += *ap.ap;
      score.per_threshold.push_back(std::move(ap));
    }
    if (has_gt && !thresholds.empty()) {
      const double mean_ap = threshold_sum / static_cast<double>(thresholds.size());
      score.per_category.push_back(mean_ap);
      category_sum += mean_ap;
      ++category_n;
    } else {
      score.per_category.push_back(std::nullopt);
      score.warnings.push_back("category " + to_string(cat) +
                               " has no ground truth; excluded from mAP");
    }
  }
  if (category_n > 0) score.map = category_sum / static_cast<double>(category_n);
  return score;
}

std::string to_text_table(const MapScore& score) {
  std::string out = "category      ";
  std::vector<double> thresholds;
  for (const APResult& r : score.per_threshold) {
    if (r.category == kRealCategories[0]) thresholds.push_back(r.threshold);
  }
  char buf[64];
  for (const double t : thresholds) {
    std::snprintf(buf, sizeof(buf), "AP@%-5.2f ", t);
    out += buf;
  }
  out += "mean\n";
  std::size_t idx = 0;
  for (std::size_t c = 0; c < kRealCategories.size(); ++c) {
    std::snprintf(buf, sizeof(buf), "%-13s ", to_string(kRealCategories[c]).c_str());
    out += buf;
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      out += format_ap(score.per_threshold[idx++].ap) + "   ";
    }
    out += format_ap(score.per_category[c]) + "\n";
  }
  out += "mAP";
  out += std::string(11 + thresholds.size() * 9, ' ');
  out += format_ap(score.map) + "\n";
  for (const std::string& w : score.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string to_csv(const MapScore& score) {
  std::string out = "ap_ped_crossing,ap_divider,ap_boundary,map\n";
  auto cell = [](const std::optional<double>& v) -> std::string {
    if (!v.has_value()) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", *v);
    return buf;
  };
  out += cell(score.per_category[0]) + "," + cell(score.per_category[1]) + "," +
         cell(score.per_category[2]) + "," + cell(score.map) + "\n";
  return out;
}

}  // namespace vecmap
