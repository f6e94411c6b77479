#ifndef UAVDET_COMPARE_HPP_
#define UAVDET_COMPARE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uavdet/eval.hpp"
#include "uavdet/oracle_detector.hpp"
#include "uavdet/run_table.hpp"
#include "uavdet/scene.hpp"

namespace uavdet {

struct CompareConfiguration {
  std::string label;
  NoiseModel noise;
};

struct CompareConfig {
  SceneSpec scene;
  int images_per_run = 10;
  EvalScope scope = EvalScope::PerImageAveraged;
  double iou_threshold = kDefaultIouThreshold;
  std::vector<CompareConfiguration> configurations;
};

// {
//   "scene": {...scene spec keys...},
//   "images": 10, "scope": "per-image", "iou": 0.5,
//   "configurations": [{"label": "clean", "noise": {...noise keys...}}, ...]
// }
CompareConfig parse_compare_config(std::string_view json_text);

// Every run draws a fresh set of scenes (shared by all configurations in
// that run), perturbs them with each configuration's noise model and
// scores the result. One row per configuration, in config order.
RunTable run_compare(const CompareConfig& config, int runs, std::uint64_t seed, int jobs = 1);

// mAP of one (scene set, noise) run; exposed for tests.
double run_once(const CompareConfig& config, const NoiseModel& noise, std::uint64_t run_seed,
                std::uint64_t noise_stream, int jobs = 1);

}  // namespace uavdet

#endif  // UAVDET_COMPARE_HPP_
