#ifndef UAVDET_TESTS_ORACLES_CLAHE_REFERENCE_HPP_
#define UAVDET_TESTS_ORACLES_CLAHE_REFERENCE_HPP_

// Per-pixel CLAHE: every output pixel recomputes the histograms of its
// neighbouring tiles from scratch and blends their equalized values
// bilinearly between tile centers. Slow, only for small test images.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "uavdet/image.hpp"

namespace uavdet::oracle {

inline int ref_luma(const ImageBuffer& img, int x, int y) {
  const auto c = img.at(x, y);
  return static_cast<int>(std::clamp(std::round(0.299 * c[0] + 0.587 * c[1] + 0.114 * c[2]), 0.0, 255.0));
}

// Equalized value of `level` using the tile [x0,x1) x [y0,y1).
inline double ref_tile_map(const ImageBuffer& img, int x0, int x1, int y0, int y1, int level, double clip) {
  std::array<double, 256> hist{};
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) hist[static_cast<std::size_t>(ref_luma(img, x, y))] += 1.0;
  }
  int distinct = 0;
  for (double h : hist) distinct += h > 0.0;
  if (distinct <= 1) return level;
  const double area = static_cast<double>((x1 - x0) * (y1 - y0));
  const double limit = std::max(1.0, clip * area / 256.0);
  double excess = 0.0;
  for (double& h : hist) {
    if (h > limit) {
      excess += h - limit;
      h = limit;
    }
  }
  double cdf = 0.0;
  for (int v = 0; v <= level; ++v) cdf += hist[static_cast<std::size_t>(v)] + excess / 256.0;
  return std::min(255.0, cdf * 255.0 / area);
}

inline ImageBuffer ref_clahe(const ImageBuffer& img, int grid, double clip) {
  const int w = img.width();
  const int h = img.height();
  auto edge = [](int i, int size, int g) { return static_cast<int>(static_cast<long long>(i) * size / g); };
  // neighbouring tiles and weight of the far one along one axis
  auto axis = [&](int p, int size, int& t0, int& t1, double& wt) {
    const double pc = p + 0.5;
    t0 = 0;
    t1 = 0;
    wt = 0.0;
    for (int t = 0; t < grid; ++t) {
      const double c = 0.5 * (edge(t, size, grid) + edge(t + 1, size, grid));
      if (c <= pc) t0 = t;
    }
    const double c0 = 0.5 * (edge(t0, size, grid) + edge(t0 + 1, size, grid));
    if (pc <= c0 || t0 == grid - 1) {
      t1 = t0;
      return;
    }
    t1 = t0 + 1;
    const double c1 = 0.5 * (edge(t1, size, grid) + edge(t1 + 1, size, grid));
    wt = (pc - c0) / (c1 - c0);
  };
  ImageBuffer out = img;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int tx0, tx1, ty0, ty1;
      double wx, wy;
      axis(x, w, tx0, tx1, wx);
      axis(y, h, ty0, ty1, wy);
      const int level = ref_luma(img, x, y);
      auto m = [&](int ty, int tx) {
        return ref_tile_map(img, edge(tx, w, grid), edge(tx + 1, w, grid), edge(ty, h, grid), edge(ty + 1, h, grid),
                            level, clip);
      };
      const double mapped = (1 - wy) * ((1 - wx) * m(ty0, tx0) + wx * m(ty0, tx1)) +
                            wy * ((1 - wx) * m(ty1, tx0) + wx * m(ty1, tx1));
      auto c = img.at(x, y);
      for (auto& ch : c) ch = static_cast<std::uint8_t>(std::clamp(std::round(ch + mapped - level), 0.0, 255.0));
      out.set(x, y, c);
    }
  }
  return out;
}

}  // namespace uavdet::oracle

#endif  // UAVDET_TESTS_ORACLES_CLAHE_REFERENCE_HPP_
