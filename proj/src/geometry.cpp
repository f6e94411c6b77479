#include "uavdet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace uavdet {

BBox box_from_corners(double x0, double y0, double x1, double y1, int class_id) {
  return BBox{std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1), class_id};
}

bool is_valid(const BBox& b) {
  return std::isfinite(b.x_min) && std::isfinite(b.y_min) && std::isfinite(b.x_max) &&
         std::isfinite(b.y_max) && b.x_min <= b.x_max && b.y_min <= b.y_max;
}

double iou(const BBox& a, const BBox& b) {
  const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  const double inter = (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

CenterBox box_to_center_format(const BBox& b, double width, double height) {
  return CenterBox{(b.x_min + b.x_max) / (2.0 * width), (b.y_min + b.y_max) / (2.0 * height),
                   b.width() / width, b.height() / height};
}

BBox center_format_to_box(const CenterBox& c, int class_id, double width, double height) {
  const double half_w = c.w * width / 2.0;
  const double half_h = c.h * height / 2.0;
  const double cx = c.cx * width;
  const double cy = c.cy * height;
  return BBox{std::clamp(cx - half_w, 0.0, width), std::clamp(cy - half_h, 0.0, height),
              std::clamp(cx + half_w, 0.0, width), std::clamp(cy + half_h, 0.0, height),
              class_id};
}

std::optional<BBox> clamp_box(const BBox& b, double width, double height) {
  BBox out{std::clamp(b.x_min, 0.0, width), std::clamp(b.y_min, 0.0, height),
           std::clamp(b.x_max, 0.0, width), std::clamp(b.y_max, 0.0, height), b.class_id};
  if (!(out.x_max > out.x_min) || !(out.y_max > out.y_min)) return std::nullopt;
  return out;
}

}  // namespace uavdet
