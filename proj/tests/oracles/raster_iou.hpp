#ifndef UAVDET_TESTS_ORACLES_RASTER_IOU_HPP_
#define UAVDET_TESTS_ORACLES_RASTER_IOU_HPP_

// IoU by counting covered unit cells on an integer grid. Only valid for
// integer-coordinate boxes.

#include <array>

namespace uavdet::oracle {

struct IntBox {
  int x0, y0, x1, y1;
};

inline bool covers(const IntBox& b, int cx, int cy) { return cx >= b.x0 && cx < b.x1 && cy >= b.y0 && cy < b.y1; }

inline double raster_iou(const IntBox& a, const IntBox& b, int grid) {
  long inter = 0;
  long uni = 0;
  for (int cy = 0; cy < grid; ++cy) {
    for (int cx = 0; cx < grid; ++cx) {
      const bool in_a = covers(a, cx, cy);
      const bool in_b = covers(b, cx, cy);
      inter += in_a && in_b;
      uni += in_a || in_b;
    }
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace uavdet::oracle

#endif  // UAVDET_TESTS_ORACLES_RASTER_IOU_HPP_
