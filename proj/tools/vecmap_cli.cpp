// Copyright 2026 the vecmap authors. SPDX-License-Identifier: Apache-2.0
//
// vecmap command line: synthetic scene generation, polyline tools, the
// coarse-to-fine fitting harness, and Chamfer-AP evaluation.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "vecmap/eval.hpp"
#include "vecmap/grad_check.hpp"
#include "vecmap/map_io.hpp"
#include "vecmap/parallel.hpp"
#include "vecmap/refine.hpp"
#include "vecmap/scenegen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;

using namespace vecmap;
namespace fs = std::filesystem;

PerceptionRange parse_range(const std::string& text) {
  if (text == "regular") return PerceptionRange::regular();
  if (text == "long") return PerceptionRange::long_range();
  PerceptionRange r;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &r.x_min, &r.x_max, &r.y_min,
                  &r.y_max) != 4 ||
      !r.valid()) {
    throw CLI::ValidationError("--range", "expected 'regular', 'long' or x0,x1,y0,y1");
  }
  return r;
}

std::vector<int> parse_schedule(const std::string& text) {
  std::vector<int> counts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    counts.push_back(std::stoi(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return counts;
}

std::vector<double> parse_thresholds(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

void write_text_file(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
  }
  fs::rename(tmp, path);
}

// Pairs prediction and ground-truth map files by filename when both
// arguments are directories; single files form one pair.
std::vector<std::pair<fs::path, fs::path>> pair_scenes(const fs::path& pred,
                                                       const fs::path& gt) {
  std::vector<std::pair<fs::path, fs::path>> pairs;
  if (fs::is_directory(pred) != fs::is_directory(gt)) {
    throw std::runtime_error("--pred and --gt must both be files or both directories");
  }
  if (!fs::is_directory(pred)) {
    pairs.emplace_back(pred, gt);
    return pairs;
  }
  std::map<std::string, fs::path> gt_by_name;
  for (const auto& entry : fs::directory_iterator(gt)) {
    if (entry.path().extension() == ".json") {
      gt_by_name[entry.path().filename().string()] = entry.path();
    }
  }
  std::vector<fs::path> pred_files;
  for (const auto& entry : fs::directory_iterator(pred)) {
    if (entry.path().extension() == ".json") pred_files.push_back(entry.path());
  }
  std::sort(pred_files.begin(), pred_files.end());
  for (const fs::path& p : pred_files) {
    const auto it = gt_by_name.find(p.filename().string());
    if (it == gt_by_name.end()) {
      throw std::runtime_error("no ground-truth file matching " + p.filename().string());
    }
    pairs.emplace_back(p, it->second);
  }
  if (pairs.empty()) throw std::runtime_error("no .json scene files found");
  return pairs;
}

int run_generate(const std::string& range_text, const SceneSpec& spec, bool suite,
                 const std::string& out, const std::string& out_dir) {
  const PerceptionRange range = parse_range(range_text);
  if (suite) {
    if (out_dir.empty()) throw CLI::ValidationError("--out-dir", "required with --suite");
    fs::create_directories(out_dir);
    const std::vector<SceneSpec> specs = standard_suite();
    for (const SceneSpec& s : specs) {
      const GroundTruthSet scene = generate_scene(s, range);
      write_map(scene, range,
                fs::path(out_dir) / ("scene_" + std::to_string(s.seed) + ".json"));
    }
    std::printf("wrote %zu scenes to %s\n", specs.size(), out_dir.c_str());
    return kExitOk;
  }
  if (out.empty()) throw CLI::ValidationError("--out", "required");
  const GroundTruthSet scene = generate_scene(spec, range);
  write_map(scene, range, out);
  std::printf("wrote %zu elements to %s\n", scene.size(), out.c_str());
  return kExitOk;
}

int run_simplify(const std::string& input, const std::string& out, double epsilon) {
  const MapFile file = read_map(input);
  const GroundTruthSet gts = file.to_ground_truth();
  GroundTruthSet simplified;
  for (const MapElement& e : gts) {
    simplified.emplace_back(e.category, rdp_simplify(e.shape, epsilon));
  }
  write_map(simplified, file.range, out);
  std::printf("simplified %zu elements (epsilon %.3f m) to %s\n", simplified.size(),
              epsilon, out.c_str());
  return kExitOk;
}

int run_densify(const std::string& input, const std::string& out, int density) {
  const MapFile file = read_map(input);
  const GroundTruthSet gts = file.to_ground_truth();
  GroundTruthSet dense;
  for (const MapElement& e : gts) {
    dense.emplace_back(e.category, element_at_density(e, density));
  }
  write_map(dense, file.range, out);
  std::printf("rendered %zu elements at density %d to %s\n", dense.size(), density,
              out.c_str());
  return kExitOk;
}

int run_fit(const std::string& input, const std::string& out,
            const std::string& trajectory_path, const FitConfig& config) {
  const MapFile file = read_map(input);
  const GroundTruthSet scene = file.to_ground_truth();
  const FitResult result = progressive_fit(scene, file.range, config);
  write_map(result.final_map, file.range, out);
  if (!trajectory_path.empty()) {
    write_text_file(trajectory_path, trajectory_to_csv(result.trajectory));
  }
  std::printf("fit %zu ground-truth elements; kept %zu predictions; final loss %.6f\n",
              scene.size(), result.final_map.size(),
              result.trajectory.empty() ? 0.0 : result.trajectory.back().total);
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

int run_eval(const std::string& pred, const std::string& gt,
             const std::string& thresholds, const std::string& csv_out, int samples) {
  const auto pairs = pair_scenes(pred, gt);
  std::vector<PredictionSet> pred_scenes(pairs.size());
  std::vector<GroundTruthSet> gt_scenes(pairs.size());
  std::string load_error;
  std::mutex error_mutex;
  parallel_for(pairs.size(), [&](std::size_t i) {
    try {
      pred_scenes[i] = read_map(pairs[i].first).to_predictions();
      gt_scenes[i] = read_map(pairs[i].second).to_ground_truth();
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (load_error.empty()) load_error = e.what();
    }
  });
  if (!load_error.empty()) throw MapFormatError(load_error);

  ChamferParams params;
  params.sample_count = samples;
  const MapScore score =
      map_score(pred_scenes, gt_scenes, parse_thresholds(thresholds), params);
  std::fputs(to_text_table(score).c_str(), stdout);
  if (!csv_out.empty()) write_text_file(csv_out, to_csv(score));
  return kExitOk;
}

int run_grad_check(int trials, std::uint64_t seed, double tolerance, double step) {
  GradCheckConfig config;
  config.trials = trials;
  config.seed = seed;
  config.tolerance = tolerance;
  config.step = step;
  const GradCheckReport report = run_gradient_checks(config);
  std::fputs(to_string(report).c_str(), stdout);
  return report.passed ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vectorized HD-map construction toolkit"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "generate a synthetic ground-truth map");
  SceneSpec spec;
  std::string range_text = "regular";
  std::string out, out_dir;
  bool suite = false;
  generate->add_option("--seed", spec.seed, "scene seed");
  generate->add_option("--roads", spec.road_count, "number of roads")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--lanes", spec.lanes_per_road, "lanes per road")
      ->check(CLI::PositiveNumber);
  generate->add_option("--crossings", spec.crossing_count, "pedestrian crossings")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--curvature-min", spec.curvature_min, "min |curvature| 1/m");
  generate->add_option("--curvature-max", spec.curvature_max, "max |curvature| 1/m");
  generate->add_option("--jitter", spec.jitter, "lateral wave amplitude, m");
  generate->add_option("--range", range_text, "regular | long | x0,x1,y0,y1");
  generate->add_option("--out", out, "output map file");
  generate->add_flag("--suite", suite, "emit the pinned 20-scene standard suite");
  generate->add_option("--out-dir", out_dir, "output directory for --suite");

  // simplify
  auto* simplify = app.add_subcommand("simplify", "RDP-simplify every element of a map");
  std::string simplify_in, simplify_out;
  double epsilon = 0.05;
  simplify->add_option("input", simplify_in, "input map file")->required();
  simplify->add_option("--epsilon", epsilon, "RDP threshold, m")->check(CLI::PositiveNumber);
  simplify->add_option("--out", simplify_out, "output map file")->required();

  // densify
  auto* densify = app.add_subcommand("densify", "render every element at a fixed density");
  std::string densify_in, densify_out;
  int density = 17;
  densify->add_option("input", densify_in, "input map file")->required();
  densify->add_option("--density", density, "vertex count")
      ->required()
      ->check(CLI::PositiveNumber);
  densify->add_option("--out", densify_out, "output map file")->required();

  // fit
  auto* fit = app.add_subcommand("fit", "coarse-to-fine fit of free candidates to a map");
  std::string fit_in, fit_out, trajectory_path, schedule_text = "3,5,9,17,17,17";
  std::string decay_text = "cosine";
  FitConfig fit_config;
  fit->add_option("input", fit_in, "ground-truth map file")->required();
  fit->add_option("--out", fit_out, "output prediction map")->required();
  fit->add_option("--trajectory", trajectory_path, "per-step loss CSV");
  fit->add_option("--schedule", schedule_text, "per-layer densities (default 3,5,9,17,17,17)");
  fit->add_option("--n", fit_config.candidate_count, "candidate count")
      ->check(CLI::PositiveNumber);
  fit->add_option("--steps", fit_config.steps_per_layer, "steps per layer")
      ->check(CLI::PositiveNumber);
  fit->add_option("--step-size", fit_config.step_size, "descent step, m-scale")
      ->check(CLI::PositiveNumber);
  fit->add_option("--seed", fit_config.seed, "candidate init seed");
  fit->add_option("--rematch-every", fit_config.rematch_every, "steps between rematches")
      ->check(CLI::PositiveNumber);
  fit->add_option("--decay", decay_text, "step decay: cosine | none");

  // eval
  auto* eval = app.add_subcommand("eval", "Chamfer-distance AP evaluation");
  std::string eval_pred, eval_gt, thresholds_text = "0.5,1.0,1.5", csv_out;
  int samples = 100;
  eval->add_option("--pred", eval_pred, "prediction map file or directory")->required();
  eval->add_option("--gt", eval_gt, "ground-truth map file or directory")->required();
  eval->add_option("--thresholds", thresholds_text, "Chamfer thresholds, m");
  eval->add_option("--csv", csv_out, "write the AP table as CSV");
  eval->add_option("--samples", samples, "Chamfer sample count")->check(CLI::PositiveNumber);

  // grad-check
  auto* grad = app.add_subcommand("grad-check", "verify analytic loss gradients");
  int trials = 200;
  std::uint64_t grad_seed = 2026;
  double tolerance = 1e-4;
  double fd_step = 1e-6;
  grad->add_option("--trials", trials, "configurations per density")
      ->check(CLI::PositiveNumber);
  grad->add_option("--seed", grad_seed, "random seed");
  grad->add_option("--tolerance", tolerance, "relative error bound");
  grad->add_option("--step", fd_step, "finite-difference step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code != 0) std::cerr << app.help();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(range_text, spec, suite, out, out_dir);
    if (simplify->parsed()) return run_simplify(simplify_in, simplify_out, epsilon);
    if (densify->parsed()) return run_densify(densify_in, densify_out, density);
    if (fit->parsed()) {
      fit_config.schedule = DensitySchedule(parse_schedule(schedule_text));
      if (decay_text == "none") {
        fit_config.decay = StepDecay::kNone;
      } else if (decay_text == "cosine") {
        fit_config.decay = StepDecay::kCosine;
      } else {
        throw CLI::ValidationError("--decay", "expected cosine or none");
      }
      return run_fit(fit_in, fit_out, trajectory_path, fit_config);
    }
    if (eval->parsed()) return run_eval(eval_pred, eval_gt, thresholds_text, csv_out, samples);
    if (grad->parsed()) return run_grad_check(trials, grad_seed, tolerance, fd_step);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MapFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << " (" << e.trajectory().size()
              << " trajectory rows)\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
