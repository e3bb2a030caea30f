// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vecmap {

/// Central-finite-difference verification of every analytic loss gradient
/// on random (pred, target, mask) configurations. Coordinates within
/// `exclusion` of a non-smooth locus (L1 kinks, segment-projection
/// boundaries, degenerate edges) are skipped.
struct GradCheckConfig {
  int trials = 200;
  std::vector<int> densities = {3, 5, 9, 17};
  double step = 1e-6;       // central-difference h
  double tolerance = 1e-4;  // relative error bound
  double exclusion = 1e-5;
  std::uint64_t seed = 2026;
};

struct GradCheckReport {
  struct Component {
    std::string name;
    long checked = 0;
    long skipped = 0;
    long failed = 0;
    double max_rel_err = 0.0;
  };
  std::vector<Component> components;
  bool passed = false;
};

GradCheckReport run_gradient_checks(const GradCheckConfig& config = {});
std::string to_string(const GradCheckReport& report);

}  // namespace vecmap
