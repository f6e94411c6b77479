#ifndef UAVDET_RESIZE_HPP_
#define UAVDET_RESIZE_HPP_

#include <string_view>

#include "uavdet/geometry.hpp"
#include "uavdet/image.hpp"

namespace uavdet {

enum class ResizeMethod { Stretch, Letterbox };

inline constexpr int kDefaultTargetSize = 608;

std::string_view method_name(ResizeMethod method);
// "stretch" or "letterbox"; throws ParameterError otherwise.
ResizeMethod parse_resize_method(std::string_view name);

// Square resize plan. Stretch scales each axis to the target with no
// padding. Letterbox scales both axes by min(target/w, target/h), content
// is round(source * scale), and black pads center it (an odd leftover
// pixel goes to the bottom/right).
struct ResizePlan {
  ResizeMethod method = ResizeMethod::Stretch;
  int source_w = 0;
  int source_h = 0;
  int target = 0;
  double scale_x = 1.0;
  double scale_y = 1.0;
  int pad_left = 0;
  int pad_top = 0;
  int content_w = 0;
  int content_h = 0;

  bool operator==(const ResizePlan&) const = default;
};

// Throws ParameterError for non-positive dimensions.
ResizePlan plan_resize(ResizeMethod method, int source_w, int source_h, int target);

// Bilinear resample into a target x target image; pads are (0,0,0).
// Throws PlanError if the image size differs from the plan's source.
ImageBuffer apply_resize(const ImageBuffer& image, const ResizePlan& plan);

// x' = x * scale_x + pad_left, y' = y * scale_y + pad_top.
BBox map_box_forward(const BBox& b, const ResizePlan& plan);
// Algebraic inverse of map_box_forward, clamped to the source frame.
BBox map_box_inverse(const BBox& b, const ResizePlan& plan);

}  // namespace uavdet

#endif  // UAVDET_RESIZE_HPP_
