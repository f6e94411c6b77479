#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "uavdet/augment.hpp"
#include "uavdet/error.hpp"

namespace uavdet {
namespace {

using Lut = std::array<double, 256>;

Lut identity_lut() {
  Lut lut{};
  for (std::size_t v = 0; v < lut.size(); ++v) lut[v] = static_cast<double>(v);
  return lut;
}

// Clipped, redistributed cumulative histogram scaled to [0,255].
Lut tile_lut(const std::array<double, 256>& hist, double area, double clip_limit) {
  const auto occupied = std::count_if(hist.begin(), hist.end(), [](double c) { return c > 0.0; });
  if (occupied <= 1) return identity_lut();

  const double limit = std::max(1.0, clip_limit * area / 256.0);
  std::array<double, 256> clipped{};
  double excess = 0.0;
  for (std::size_t v = 0; v < 256; ++v) {
    clipped[v] = std::min(hist[v], limit);
    excess += hist[v] - clipped[v];
  }
  const double share = excess / 256.0;
  Lut lut{};
  double cdf = 0.0;
  for (std::size_t v = 0; v < 256; ++v) {
    cdf += clipped[v] + share;
    lut[v] = std::min(255.0, cdf * 255.0 / area);
  }
  return lut;
}

// For each output column (or row): the two neighbouring tiles whose
// centers bracket the pixel center, and the weight of the second one.
struct Blend {
  int lo;
  int hi;
  double w;
};

std::vector<int> tile_edges(int size, int tiles) {
  std::vector<int> edges(static_cast<std::size_t>(tiles) + 1);
  for (int i = 0; i <= tiles; ++i) {
    edges[static_cast<std::size_t>(i)] =
        static_cast<int>(static_cast<long long>(i) * size / tiles);
  }
  return edges;
}

std::vector<Blend> blend_axis(int size, const std::vector<int>& edges) {
  const int tiles = static_cast<int>(edges.size()) - 1;
  std::vector<double> centers(static_cast<std::size_t>(tiles));
  for (int i = 0; i < tiles; ++i) {
    centers[static_cast<std::size_t>(i)] =
        0.5 * (edges[static_cast<std::size_t>(i)] + edges[static_cast<std::size_t>(i) + 1]);
  }
  std::vector<Blend> out(static_cast<std::size_t>(size));
  int t = 0;
  for (int p = 0; p < size; ++p) {
    const double pc = p + 0.5;
    while (t + 1 < tiles && centers[static_cast<std::size_t>(t) + 1] <= pc) ++t;
    if (pc <= centers.front()) {
      out[static_cast<std::size_t>(p)] = {0, 0, 0.0};
    } else if (t + 1 >= tiles) {
      out[static_cast<std::size_t>(p)] = {tiles - 1, tiles - 1, 0.0};
    } else {
      const double c0 = centers[static_cast<std::size_t>(t)];
      const double c1 = centers[static_cast<std::size_t>(t) + 1];
      out[static_cast<std::size_t>(p)] = {t, t + 1, (pc - c0) / (c1 - c0)};
    }
  }
  return out;
}

std::uint8_t luma_of(const ImageBuffer& img, int x, int y) {
  const auto c = img.at(x, y);
  const double yv = 0.299 * c[0] + 0.587 * c[1] + 0.114 * c[2];
  return static_cast<std::uint8_t>(std::clamp(std::round(yv), 0.0, 255.0));
}

}  // namespace

ImageBuffer apply_clahe(const ImageBuffer& image, const ClaheParams& params) {
  const int grid = params.tile_grid;
  if (grid < 1) throw ParameterError(fmt::format("clahe: tile grid must be >= 1, got {}", grid));
  if (!(params.clip_limit > 0.0)) {
    throw ParameterError(fmt::format("clahe: clip limit must be positive, got {}", params.clip_limit));
  }
  const int w = image.width();
  const int h = image.height();
  if (w < grid || h < grid) {
    throw ParameterError(fmt::format("clahe: image {}x{} is smaller than the {}x{} tile grid", w, h,
                                     grid, grid));
  }

  std::vector<std::uint8_t> luma(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) luma[static_cast<std::size_t>(y) * w + x] = luma_of(image, x, y);
  }

  const auto xe = tile_edges(w, grid);
  const auto ye = tile_edges(h, grid);
  std::vector<Lut> luts(static_cast<std::size_t>(grid) * grid);
  for (int ty = 0; ty < grid; ++ty) {
    for (int tx = 0; tx < grid; ++tx) {
      std::array<double, 256> hist{};
      for (int y = ye[ty]; y < ye[ty + 1]; ++y) {
        for (int x = xe[tx]; x < xe[tx + 1]; ++x) hist[luma[static_cast<std::size_t>(y) * w + x]] += 1.0;
      }
      const double area = static_cast<double>(xe[tx + 1] - xe[tx]) * (ye[ty + 1] - ye[ty]);
      luts[static_cast<std::size_t>(ty) * grid + tx] = tile_lut(hist, area, params.clip_limit);
    }
  }

  const auto bx = blend_axis(w, xe);
  const auto by = blend_axis(h, ye);
  ImageBuffer out = image;
  for (int y = 0; y < h; ++y) {
    const Blend& vy = by[static_cast<std::size_t>(y)];
    for (int x = 0; x < w; ++x) {
      const Blend& vx = bx[static_cast<std::size_t>(x)];
      const std::uint8_t v = luma[static_cast<std::size_t>(y) * w + x];
      auto lut_at = [&](int ty, int tx) { return luts[static_cast<std::size_t>(ty) * grid + tx][v]; };
      const double top = (1.0 - vx.w) * lut_at(vy.lo, vx.lo) + vx.w * lut_at(vy.lo, vx.hi);
      const double bottom = (1.0 - vx.w) * lut_at(vy.hi, vx.lo) + vx.w * lut_at(vy.hi, vx.hi);
      const double delta = (1.0 - vy.w) * top + vy.w * bottom - v;
      auto c = image.at(x, y);
      for (auto& ch : c) ch = static_cast<std::uint8_t>(std::clamp(std::round(ch + delta), 0.0, 255.0));
      out.set(x, y, c);
    }
  }
  return out;
}

}  // namespace uavdet
