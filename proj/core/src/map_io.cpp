// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
#include "vecmap/map_io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

namespace vecmap {

namespace {

using nlohmann::json;

double round6(double x) {
  const double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // normalize -0.0
}

std::string element_context(std::size_t index) {
  return "element " + std::to_string(index);
}

ElementCategory parse_category(const std::string& name, std::size_t index) {
  const auto cat = category_from_string(name);
  if (!cat.has_value() || *cat == ElementCategory::kNone) {
    throw MapFormatError(element_context(index) + ": unknown category '" + name + "'");
  }
  return *cat;
}

void validate_element(const MapFile::Element& e, std::size_t index) {
  const ElementCategory cat = parse_category(e.category, index);
  const std::size_t min_vertices = e.closed ? 3 : 2;
  if (e.vertices.size() < min_vertices) {
    throw MapFormatError(element_context(index) + ": field 'vertices' needs at least " +
                         std::to_string(min_vertices) + " entries for closed=" +
                         (e.closed ? "true" : "false"));
  }
  for (const Point2& v : e.vertices) {
    if (!is_finite(v)) {
      throw MapFormatError(element_context(index) + ": field 'vertices' has a non-finite value");
    }
  }
  if (e.confidence.has_value() && !(*e.confidence >= 0.0 && *e.confidence <= 1.0)) {
    throw MapFormatError(element_context(index) + ": field 'confidence' outside [0, 1]");
  }
  if (!e.confidence.has_value() && cat == ElementCategory::kPedCrossing && !e.closed) {
    throw MapFormatError(element_context(index) + ": ped_crossing must be closed");
  }
  if (!e.confidence.has_value() && cat != ElementCategory::kPedCrossing && e.closed) {
    throw MapFormatError(element_context(index) + ": only ped_crossing may be closed");
  }
}

}  // namespace

bool MapFile::is_prediction() const {
  return !elements.empty() && elements.front().confidence.has_value();
}

GroundTruthSet MapFile::to_ground_truth() const {
  GroundTruthSet out;
  out.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Element& e = elements[i];
    if (e.confidence.has_value()) {
      throw MapFormatError(element_context(i) +
                           ": field 'confidence' present in a ground-truth file");
    }
    try {
      out.emplace_back(parse_category(e.category, i), Polyline(e.vertices, e.closed));
    } catch (const std::invalid_argument& ex) {
      throw MapFormatError(element_context(i) + ": " + ex.what());
    }
  }
  return out;
}

PredictionSet MapFile::to_predictions() const {
  PredictionSet out;
  out.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Element& e = elements[i];
    if (!e.confidence.has_value()) {
      throw MapFormatError(element_context(i) +
                           ": field 'confidence' missing in a prediction file");
    }
    try {
      out.emplace_back(parse_category(e.category, i), *e.confidence,
                       Polyline(e.vertices, e.closed));
    } catch (const std::invalid_argument& ex) {
      throw MapFormatError(element_context(i) + ": " + ex.what());
    }
  }
  return out;
}

MapFile make_map_file(const GroundTruthSet& gts, const PerceptionRange& range) {
  MapFile file;
  file.range = range;
  for (const MapElement& e : gts) {
    file.elements.push_back(
        {to_string(e.category), e.closed(), std::nullopt, e.shape.vertices()});
  }
  return file;
}

MapFile make_map_file(const PredictionSet& preds, const PerceptionRange& range) {
  MapFile file;
  file.range = range;
  for (const PredictedInstance& p : preds) {
    file.elements.push_back(
        {to_string(p.category), p.shape.closed(), p.confidence, p.shape.vertices()});
  }
  return file;
}

MapFile read_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MapFormatError("cannot open map file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw MapFormatError("malformed JSON in " + path.string() + ": " + e.what());
  }

  MapFile file;
  if (!j.is_object()) throw MapFormatError("top level must be an object");
  if (!j.contains("version") || !j["version"].is_string()) {
    throw MapFormatError("field 'version' missing or not a string");
  }
  file.version = j["version"].get<std::string>();
  if (file.version != "1.0") {
    throw MapFormatError("field 'version': unsupported value '" + file.version + "'");
  }
  if (!j.contains("range") || !j["range"].is_object()) {
    throw MapFormatError("field 'range' missing or not an object");
  }
  const json& rj = j["range"];
  for (const char* axis : {"x", "y"}) {
    if (!rj.contains(axis) || !rj[axis].is_array() || rj[axis].size() != 2 ||
        !rj[axis][0].is_number() || !rj[axis][1].is_number()) {
      throw MapFormatError(std::string("field 'range.") + axis + "' must be [min, max]");
    }
  }
  file.range = {rj["x"][0].get<double>(), rj["x"][1].get<double>(),
                rj["y"][0].get<double>(), rj["y"][1].get<double>()};
  if (!file.range.valid()) throw MapFormatError("field 'range': min must be < max");

  if (!j.contains("elements") || !j["elements"].is_array()) {
    throw MapFormatError("field 'elements' missing or not an array");
  }
  std::size_t with_confidence = 0;
  for (std::size_t i = 0; i < j["elements"].size(); ++i) {
    const json& ej = j["elements"][i];
    if (!ej.is_object()) throw MapFormatError(element_context(i) + ": not an object");
    MapFile::Element e;
    if (!ej.contains("category") || !ej["category"].is_string()) {
      throw MapFormatError(element_context(i) + ": field 'category' missing or not a string");
    }
    e.category = ej["category"].get<std::string>();
    if (!ej.contains("closed") || !ej["closed"].is_boolean()) {
      throw MapFormatError(element_context(i) + ": field 'closed' missing or not a boolean");
    }
    e.closed = ej["closed"].get<bool>();
    if (ej.contains("confidence")) {
      if (!ej["confidence"].is_number()) {
        throw MapFormatError(element_context(i) + ": field 'confidence' must be a number");
      }
      e.confidence = ej["confidence"].get<double>();
      ++with_confidence;
    }
    if (!ej.contains("vertices") || !ej["vertices"].is_array()) {
      throw MapFormatError(element_context(i) + ": field 'vertices' missing or not an array");
    }
    for (const json& vj : ej["vertices"]) {
      // A third (z) coordinate is accepted and dropped.
      if (!vj.is_array() || vj.size() < 2 || vj.size() > 3 || !vj[0].is_number() ||
          !vj[1].is_number()) {
        throw MapFormatError(element_context(i) +
                             ": field 'vertices' entries must be [x, y] or [x, y, z]");
      }
      e.vertices.push_back({vj[0].get<double>(), vj[1].get<double>()});
    }
    validate_element(e, i);
    file.elements.push_back(std::move(e));
  }
  if (with_confidence != 0 && with_confidence != file.elements.size()) {
    throw MapFormatError("field 'confidence' must be present on all elements or none");
  }
  return file;
}

void write_map(const MapFile& file, const std::filesystem::path& path) {
  json j;
  j["version"] = file.version;
  j["range"] = {{"x", {round6(file.range.x_min), round6(file.range.x_max)}},
                {"y", {round6(file.range.y_min), round6(file.range.y_max)}}};
  json elements = json::array();
  for (std::size_t i = 0; i < file.elements.size(); ++i) {
    const MapFile::Element& e = file.elements[i];
    validate_element(e, i);
    json ej;
    ej["category"] = e.category;
    ej["closed"] = e.closed;
    if (e.confidence.has_value()) ej["confidence"] = round6(*e.confidence);
    json verts = json::array();
    for (const Point2& v : e.vertices) {
      verts.push_back({round6(v.x), round6(v.y)});
    }
    ej["vertices"] = std::move(verts);
    elements.push_back(std::move(ej));
  }
  j["elements"] = std::move(elements);

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw MapFormatError("cannot write map file: " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw MapFormatError("write failed: " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_map(const GroundTruthSet& gts, const PerceptionRange& range,
               const std::filesystem::path& path) {
  write_map(make_map_file(gts, range), path);
}

void write_map(const PredictionSet& preds, const PerceptionRange& range,
               const std::filesystem::path& path) {
  write_map(make_map_file(preds, range), path);
}

}  // namespace vecmap
