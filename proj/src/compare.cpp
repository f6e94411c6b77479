#include "uavdet/compare.hpp"

#include <fmt/format.h>

#include "json_config.hpp"
#include "uavdet/error.hpp"
#include "uavdet/parallel.hpp"
#include "uavdet/random.hpp"

namespace uavdet {

namespace {
constexpr std::uint64_t kNoiseStream = 1;
}  // namespace

CompareConfig parse_compare_config(std::string_view json_text) {
  const auto j = detail::parse_json_object(json_text, "compare config");
  detail::reject_unknown_keys(j, {"scene", "images", "scope", "iou", "configurations"}, "compare config");
  CompareConfig c;
  if (j.contains("scene")) {
    if (!j["scene"].is_object()) throw ConfigError("compare config.scene: expected an object");
    c.scene = detail::scene_spec_from_json(j["scene"], "compare config.scene");
  }
  c.images_per_run = static_cast<int>(detail::integer_field(j, "images", c.images_per_run, "compare config"));
  if (c.images_per_run < 1) throw ConfigError("compare config.images: must be >= 1");
  if (j.contains("scope")) {
    if (!j["scope"].is_string()) throw ConfigError("compare config.scope: expected a string");
    try {
      c.scope = parse_scope(j["scope"].get<std::string>());
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("compare config.scope: ") + e.what());
    }
  }
  c.iou_threshold = detail::number_field(j, "iou", c.iou_threshold, "compare config");
  if (!(c.iou_threshold > 0.0 && c.iou_threshold < 1.0)) throw ConfigError("compare config.iou: must be in (0,1)");
  if (!j.contains("configurations") || !j["configurations"].is_array() || j["configurations"].empty()) {
    throw ConfigError("compare config.configurations: expected a non-empty array");
  }
  for (std::size_t i = 0; i < j["configurations"].size(); ++i) {
    const auto& e = j["configurations"][i];
    const std::string where = fmt::format("compare config.configurations[{}]", i);
    if (!e.is_object()) throw ConfigError(where + ": expected an object");
    detail::reject_unknown_keys(e, {"label", "noise"}, where);
    if (!e.contains("label") || !e["label"].is_string()) throw ConfigError(where + ".label: expected a string");
    CompareConfiguration cc;
    cc.label = e["label"].get<std::string>();
    if (e.contains("noise")) {
      if (!e["noise"].is_object()) throw ConfigError(where + ".noise: expected an object");
      cc.noise = detail::noise_from_json(e["noise"], where + ".noise");
    }
    c.configurations.push_back(std::move(cc));
  }
  return c;
}

double run_once(const CompareConfig& config, const NoiseModel& noise, std::uint64_t run_seed,
                std::uint64_t noise_stream, int jobs) {
  const auto n = static_cast<std::size_t>(config.images_per_run);
  const ClassMap classes = ClassMap::drone_default();
  std::vector<LabeledImage> labels(n);
  std::vector<std::vector<Detection>> dets(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    SceneSpec spec = config.scene;
    spec.seed = derive_seed(run_seed, i);
    Scene scene = generate_scene(spec, fmt::format("scene_{:04d}", i));
    dets[i] = oracle_detector(scene.labels, noise, derive_seed(spec.seed, noise_stream),
                              static_cast<int>(classes.size()));
    labels[i] = std::move(scene.labels);
  });
  GroundTruthSet gts;
  DetectionSet ds;
  for (std::size_t i = 0; i < n; ++i) {
    gts[labels[i].image_id] = labels[i].boxes;
    ds[labels[i].image_id] = std::move(dets[i]);
  }
  return evaluate(gts, ds, classes, config.iou_threshold, config.scope, jobs).map;
}

RunTable run_compare(const CompareConfig& config, int runs, std::uint64_t seed, int jobs) {
  if (runs < 1) throw ParameterError(fmt::format("compare: runs must be >= 1, got {}", runs));
  if (config.configurations.empty()) throw ParameterError("compare: no configurations");
  RunTable table;
  for (std::size_t k = 0; k < config.configurations.size(); ++k) {
    const auto& cfg = config.configurations[k];
    std::vector<double> maps;
    for (int r = 0; r < runs; ++r) {
      // Scenes depend on (seed, r) only and every configuration reuses the
      // same noise stream, so rows differ only by their noise parameters.
      maps.push_back(run_once(config, cfg.noise, derive_seed(seed, static_cast<std::uint64_t>(r)), kNoiseStream, jobs));
    }
    const RunStats s = aggregate_runs(maps);
    table.rows.push_back({cfg.label, s.mean, s.std, maps.size()});
  }
  return table;
}

}  // namespace uavdet
