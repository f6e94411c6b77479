#ifndef UAVDET_OVERLAY_HPP_
#define UAVDET_OVERLAY_HPP_

#include <span>
#include <string_view>

#include "uavdet/geometry.hpp"
#include "uavdet/image.hpp"

namespace uavdet {

inline constexpr Rgb kGroundTruthColor{0, 0, 255};
inline constexpr Rgb kDetectionColor{255, 0, 0};
inline constexpr int kStrokeWidth = 2;

struct OverlayOptions {
  bool show_confidence = true;
};

// Outlines ground truth in blue, then detections in red (red wins where
// they overlap), with 2-px strokes drawn inside each box's pixel extent.
// Each detection gets a `class confidence` tag in a 5x7 bitmap font above
// its box (below, or inside, when there is no room). Boxes are clamped to
// the frame.
ImageBuffer render_overlay(const ImageBuffer& image, std::span<const BBox> ground_truth,
                           std::span<const Detection> detections, const OverlayOptions& options = {});

// Draws `text` with its top-left glyph corner at (x, y); pixels outside
// the image are skipped. Characters outside [0-9.: -] render blank.
void draw_text(ImageBuffer& image, int x, int y, std::string_view text, Rgb color);

}  // namespace uavdet

#endif  // UAVDET_OVERLAY_HPP_
