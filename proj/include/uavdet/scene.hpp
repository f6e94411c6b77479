#ifndef UAVDET_SCENE_HPP_
#define UAVDET_SCENE_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "uavdet/annotations.hpp"
#include "uavdet/image.hpp"

namespace uavdet {

struct IntRange {
  int min = 0;
  int max = 0;
};

enum class Background { Flat, TwoTone };

// Synthetic top-down frame: obstacles (class 0) are filled rectangles or
// ellipses, persons (class 1) thin vertical capsules. Objects never
// overlap and lie fully inside the frame.
struct SceneSpec {
  int width = 640;
  int height = 360;
  IntRange obstacle_count{1, 3};
  IntRange person_count{0, 2};
  IntRange size_range{24, 96};  // obstacle side / person height, pixels
  Background background = Background::TwoTone;
  std::uint64_t seed = 0;
};

struct Scene {
  ImageBuffer image;
  LabeledImage labels;
};

// Throws ParameterError for an invalid spec and PlacementError when an
// object finds no free spot within a bounded number of tries. GT boxes
// are the bounding rectangles of the painted pixels.
Scene generate_scene(const SceneSpec& spec, std::string image_id = "scene");

// JSON object with optional keys width, height, obstacles [min,max],
// persons [min,max], size [min,max], background ("flat"|"two-tone"),
// seed. Missing keys keep the defaults; unknown keys throw ConfigError.
SceneSpec parse_scene_spec(std::string_view json_text);

}  // namespace uavdet

#endif  // UAVDET_SCENE_HPP_
