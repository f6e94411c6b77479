#ifndef UAVDET_ORACLE_DETECTOR_HPP_
#define UAVDET_ORACLE_DETECTOR_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "uavdet/annotations.hpp"
#include "uavdet/geometry.hpp"

namespace uavdet {

// confidence = clamp(realized IoU + uniform(-spread, spread), 0, 1).
struct ConfidenceLaw {
  double spread = 0.05;
};

struct NoiseModel {
  double jitter_sigma = 0.0;   // Gaussian corner noise, pixels
  double drop_rate = 0.0;      // probability a GT box is missed
  double spurious_rate = 0.0;  // Poisson mean of false boxes per image
  double offset_x = 0.0;       // fixed translation of every surviving box
  double offset_y = 0.0;
  ConfidenceLaw confidence_law;

  // No jitter, drops, spurious boxes or confidence spread.
  static NoiseModel none();
};

// Throws ParameterError unless rates are in [0,1] and sigma >= 0.
void validate(const NoiseModel& noise);

// Perturbs ground truth into a deterministic (per seed) detection list:
// surviving GT boxes first, in GT order, then spurious boxes with
// uniformly drawn classes from [0, class_count).
std::vector<Detection> oracle_detector(const LabeledImage& gt, const NoiseModel& noise,
                                       std::uint64_t seed, int class_count = 2);

// JSON object with optional keys jitter_sigma, drop_rate, spurious_rate,
// offset_x, offset_y, confidence_spread. Missing keys are 0 except
// confidence_spread (0.05).
NoiseModel parse_noise_model(std::string_view json_text);

}  // namespace uavdet

#endif  // UAVDET_ORACLE_DETECTOR_HPP_
