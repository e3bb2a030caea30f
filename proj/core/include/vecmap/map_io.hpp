// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecmap/eval.hpp"
#include "vecmap/scenegen.hpp"

namespace vecmap {

/// Thrown on any schema violation; the message names the offending field
/// and element index. No output side effects precede the throw.
class MapFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// In-memory mirror of a map file: ground truth when no element carries a
/// confidence, predictions when all do. Coordinates are stored at 6-decimal
/// resolution on disk.
struct MapFile {
  std::string version = "1.0";
  PerceptionRange range;
  struct Element {
    std::string category;
    bool closed = false;
    std::optional<double> confidence;
    std::vector<Point2> vertices;
  };
  std::vector<Element> elements;

  bool is_prediction() const;
  GroundTruthSet to_ground_truth() const;
  PredictionSet to_predictions() const;
};

MapFile make_map_file(const GroundTruthSet& gts, const PerceptionRange& range);
MapFile make_map_file(const PredictionSet& preds, const PerceptionRange& range);

/// Parses and validates a map file.
MapFile read_map(const std::filesystem::path& path);

/// Canonical serialization: sorted fields, coordinates rounded to 6
/// decimals, newline-terminated; byte-stable for identical inputs. Writes
/// to a temporary file and renames it into place.
void write_map(const MapFile& file, const std::filesystem::path& path);

void write_map(const GroundTruthSet& gts, const PerceptionRange& range,
               const std::filesystem::path& path);
void write_map(const PredictionSet& preds, const PerceptionRange& range,
               const std::filesystem::path& path);

}  // namespace vecmap
