#ifndef UAVDET_GEOMETRY_HPP_
#define UAVDET_GEOMETRY_HPP_

#include <optional>

namespace uavdet {

// Axis-aligned box in continuous pixel coordinates. Area is
// (x_max - x_min) * (y_max - y_min); there is no +1 pixel convention.
struct BBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  int class_id = 0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }

  bool operator==(const BBox&) const = default;
};

struct Detection {
  BBox box;
  double confidence = 1.0;

  bool operator==(const Detection&) const = default;
};

// Normalized center format used by YOLO label files.
struct CenterBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
};

// Builds a box from two arbitrary corners (click order does not matter).
BBox box_from_corners(double x0, double y0, double x1, double y1, int class_id);

// True if corners are finite and ordered.
bool is_valid(const BBox& b);

// Intersection over union. Class ids are ignored; 0 when the union has
// zero area.
double iou(const BBox& a, const BBox& b);

CenterBox box_to_center_format(const BBox& b, double width, double height);

// Inverse of box_to_center_format, clamped to [0,width]x[0,height].
BBox center_format_to_box(const CenterBox& c, int class_id, double width, double height);

// Intersection with the image rectangle; std::nullopt if nothing of
// positive area remains.
std::optional<BBox> clamp_box(const BBox& b, double width, double height);

}  // namespace uavdet

#endif  // UAVDET_GEOMETRY_HPP_
