#include "uavdet/oracle_detector.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "json_config.hpp"
#include "uavdet/error.hpp"
#include "uavdet/random.hpp"

namespace uavdet {

NoiseModel NoiseModel::none() {
  NoiseModel n;
  n.confidence_law.spread = 0.0;
  return n;
}

void validate(const NoiseModel& n) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(n.drop_rate)) throw ParameterError(fmt::format("noise: drop_rate {} outside [0,1]", n.drop_rate));
  if (!unit(n.spurious_rate)) {
    throw ParameterError(fmt::format("noise: spurious_rate {} outside [0,1]", n.spurious_rate));
  }
  if (!(n.jitter_sigma >= 0.0)) throw ParameterError(fmt::format("noise: jitter_sigma {} < 0", n.jitter_sigma));
  if (!(n.confidence_law.spread >= 0.0)) {
    throw ParameterError(fmt::format("noise: confidence spread {} < 0", n.confidence_law.spread));
  }
  if (!std::isfinite(n.offset_x) || !std::isfinite(n.offset_y)) throw ParameterError("noise: offsets must be finite");
}

namespace {

double draw_confidence(double realized_iou, const ConfidenceLaw& law, Rng& rng) {
  const double u = rng.uniform(-law.spread, law.spread);
  return std::clamp(realized_iou + u, 0.0, 1.0);
}

}  // namespace

std::vector<Detection> oracle_detector(const LabeledImage& gt, const NoiseModel& noise,
                                       std::uint64_t seed, int class_count) {
  validate(noise);
  Rng rng(seed);
  const double w = gt.width;
  const double h = gt.height;
  std::vector<Detection> out;

  // The same number of draws is taken per GT box whatever the outcome, so
  // changing one rate does not reshuffle the others.
  for (const auto& g : gt.boxes) {
    const bool dropped = rng.uniform01() < noise.drop_rate;
    double jitter[4];
    for (double& j : jitter) j = noise.jitter_sigma * rng.normal();
    const double u = rng.uniform(-noise.confidence_law.spread, noise.confidence_law.spread);
    if (dropped) continue;
    const BBox moved = box_from_corners(g.x_min + jitter[0] + noise.offset_x, g.y_min + jitter[1] + noise.offset_y,
                                        g.x_max + jitter[2] + noise.offset_x, g.y_max + jitter[3] + noise.offset_y,
                                        g.class_id);
    const auto box = clamp_box(moved, w, h);
    if (!box) continue;
    out.push_back({*box, std::clamp(iou(*box, g) + u, 0.0, 1.0)});
  }

  const int spurious = rng.poisson(noise.spurious_rate);
  const double max_side = std::max(9.0, std::min(w, h) / 4.0);
  for (int i = 0; i < spurious; ++i) {
    const int cls = class_count > 0 ? static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(class_count))) : 0;
    const double bw = std::min(w, rng.uniform(8.0, max_side));
    const double bh = std::min(h, rng.uniform(8.0, max_side));
    const double x = rng.uniform(0.0, w - bw);
    const double y = rng.uniform(0.0, h - bh);
    const BBox box{x, y, x + bw, y + bh, cls};
    double best = 0.0;
    for (const auto& g : gt.boxes) {
      if (g.class_id == cls) best = std::max(best, iou(box, g));
    }
    out.push_back({box, draw_confidence(best, noise.confidence_law, rng)});
  }
  return out;
}

NoiseModel parse_noise_model(std::string_view json_text) {
  return detail::noise_from_json(detail::parse_json_object(json_text, "noise model"), "noise model");
}

}  // namespace uavdet
