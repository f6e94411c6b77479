#include "uavdet/overlay.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace uavdet {
namespace {

constexpr int kGlyphW = 5;
constexpr int kGlyphH = 7;
constexpr int kGlyphAdvance = kGlyphW + 1;

// One byte per row, low 5 bits, MSB of those is the leftmost column.
using Glyph = std::array<std::uint8_t, kGlyphH>;

Glyph glyph(char c) {
  switch (c) {
    case '0': return {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E};
    case '1': return {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E};
    case '2': return {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F};
    case '3': return {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E};
    case '4': return {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02};
    case '5': return {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E};
    case '6': return {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E};
    case '7': return {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08};
    case '8': return {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E};
    case '9': return {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C};
    case '.': return {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C};
    case ':': return {0x00, 0x0C, 0x0C, 0x00, 0x0C, 0x0C, 0x00};
    case '-': return {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00};
    default: return {};
  }
}

struct PixelRect {
  int x0, y0, x1, y1;  // inclusive
};

std::optional<PixelRect> pixel_extent(const BBox& b, int w, int h) {
  const auto c = clamp_box(b, w, h);
  if (!c) return std::nullopt;
  PixelRect r{static_cast<int>(std::floor(c->x_min)), static_cast<int>(std::floor(c->y_min)),
              static_cast<int>(std::ceil(c->x_max)) - 1, static_cast<int>(std::ceil(c->y_max)) - 1};
  r.x1 = std::min(r.x1, w - 1);
  r.y1 = std::min(r.y1, h - 1);
  if (r.x1 < r.x0 || r.y1 < r.y0) return std::nullopt;
  return r;
}

void stroke(ImageBuffer& img, const PixelRect& r, Rgb color) {
  for (int y = r.y0; y <= r.y1; ++y) {
    for (int x = r.x0; x <= r.x1; ++x) {
      const bool edge = x < r.x0 + kStrokeWidth || x > r.x1 - kStrokeWidth || y < r.y0 + kStrokeWidth ||
                        y > r.y1 - kStrokeWidth;
      if (edge) img.set(x, y, color);
    }
  }
}

}  // namespace

void draw_text(ImageBuffer& image, int x, int y, std::string_view text, Rgb color) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    const Glyph g = glyph(text[i]);
    const int gx = x + static_cast<int>(i) * kGlyphAdvance;
    for (int row = 0; row < kGlyphH; ++row) {
      for (int col = 0; col < kGlyphW; ++col) {
        if (!(g[static_cast<std::size_t>(row)] & (0x10 >> col))) continue;
        const int px = gx + col;
        const int py = y + row;
        if (px >= 0 && py >= 0 && px < image.width() && py < image.height()) image.set(px, py, color);
      }
    }
  }
}

ImageBuffer render_overlay(const ImageBuffer& image, std::span<const BBox> ground_truth,
                           std::span<const Detection> detections, const OverlayOptions& options) {
  ImageBuffer out = image;
  for (const auto& g : ground_truth) {
    if (auto r = pixel_extent(g, out.width(), out.height())) stroke(out, *r, kGroundTruthColor);
  }
  for (const auto& d : detections) {
    const auto r = pixel_extent(d.box, out.width(), out.height());
    if (!r) continue;
    stroke(out, *r, kDetectionColor);
    const std::string tag = options.show_confidence ? fmt::format("{} {:.2f}", d.box.class_id, d.confidence)
                                                    : fmt::format("{}", d.box.class_id);
    int ty = r->y0 - kGlyphH - 1;
    if (ty < 0) ty = r->y1 + 2;
    if (ty + kGlyphH > out.height()) ty = r->y0 + kStrokeWidth + 1;
    draw_text(out, r->x0, ty, tag, kDetectionColor);
  }
  return out;
}

}  // namespace uavdet
