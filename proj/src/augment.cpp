#include "uavdet/augment.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "uavdet/error.hpp"

namespace uavdet {

std::string_view kind_name(AugmentationKind kind) {
  switch (kind) {
    case AugmentationKind::HorizontalFlip: return "HorizontalFlip";
    case AugmentationKind::Transpose: return "Transpose";
    case AugmentationKind::RandomRotate90: return "RandomRotate90";
    case AugmentationKind::RGBShift: return "RGBShift";
    case AugmentationKind::HSVShift: return "HSVShift";
    case AugmentationKind::BrightnessContrast: return "BrightnessContrast";
    case AugmentationKind::GammaCorrection: return "GammaCorrection";
    case AugmentationKind::CLAHE: return "CLAHE";
  }
  return "Unknown";
}

namespace {

std::uint8_t to_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

// Maps every pixel of `src` through `dst_of(x, y) -> (x', y')`.
template <typename F>
ImageBuffer remap(const ImageBuffer& src, int out_w, int out_h, F dst_of) {
  ImageBuffer out(out_w, out_h);
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      const auto [dx, dy] = dst_of(x, y);
      out.set(dx, dy, src.at(x, y));
    }
  }
  return out;
}

// Maps both corners of each box through a continuous point map and takes
// min/max of the results. The transforms here are axis permutations and
// reflections, so two corners determine the image of all four.
template <typename F>
std::vector<BBox> map_boxes(std::span<const BBox> boxes, F point_map) {
  std::vector<BBox> out;
  out.reserve(boxes.size());
  for (const auto& b : boxes) {
    const auto [x0, y0] = point_map(b.x_min, b.y_min);
    const auto [x1, y1] = point_map(b.x_max, b.y_max);
    out.push_back(box_from_corners(x0, y0, x1, y1, b.class_id));
  }
  return out;
}

template <typename F>
ImageBuffer map_channels(const ImageBuffer& image, F f) {
  ImageBuffer out = image;
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    for (std::size_t c = 0; c < 3; ++c) px[i + c] = f(px[i + c], c);
  }
  return out;
}

std::vector<BBox> copy_boxes(std::span<const BBox> boxes) {
  return std::vector<BBox>(boxes.begin(), boxes.end());
}

}  // namespace

Augmented horizontal_flip(const ImageBuffer& image, std::span<const BBox> boxes) {
  const int w = image.width();
  const double wd = w;
  return {remap(image, w, image.height(), [w](int x, int y) { return std::pair{w - 1 - x, y}; }),
          map_boxes(boxes, [wd](double x, double y) { return std::pair{wd - x, y}; })};
}

Augmented transpose(const ImageBuffer& image, std::span<const BBox> boxes) {
  return {remap(image, image.height(), image.width(), [](int x, int y) { return std::pair{y, x}; }),
          map_boxes(boxes, [](double x, double y) { return std::pair{y, x}; })};
}

Augmented rotate90(const ImageBuffer& image, std::span<const BBox> boxes, int k) {
  if (k < 0 || k > 3) throw ParameterError(fmt::format("rotate90: k must be in 0..3, got {}", k));
  Augmented cur{image, copy_boxes(boxes)};
  for (int turn = 0; turn < k; ++turn) {
    const int h = cur.image.height();
    const double hd = h;
    Augmented next{
        remap(cur.image, h, cur.image.width(), [h](int x, int y) { return std::pair{h - 1 - y, x}; }),
        map_boxes(cur.boxes, [hd](double x, double y) { return std::pair{hd - y, x}; })};
    cur = std::move(next);
  }
  return cur;
}

ImageBuffer apply_rgb_shift(const ImageBuffer& image, const std::array<double, 3>& shift) {
  return map_channels(image, [&](std::uint8_t v, std::size_t c) { return to_u8(v + shift[c]); });
}

Augmented rgb_shift(const ImageBuffer& image, std::span<const BBox> boxes, Rng& rng,
                    const RgbShiftLimits& limits) {
  const std::array<double, 3> shift{rng.uniform(-limits.r, limits.r),
                                    rng.uniform(-limits.g, limits.g),
                                    rng.uniform(-limits.b, limits.b)};
  return {apply_rgb_shift(image, shift), copy_boxes(boxes)};
}

namespace {

struct Hsv {
  double h;  // [0, 180)
  double s;  // [0, 1]
  double v;  // [0, 255]
};

Hsv rgb_to_hsv(double r, double g, double b) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  double deg = 0.0;
  if (delta > 0.0) {
    if (mx == r) {
      deg = 60.0 * (g - b) / delta;
    } else if (mx == g) {
      deg = 120.0 + 60.0 * (b - r) / delta;
    } else {
      deg = 240.0 + 60.0 * (r - g) / delta;
    }
    if (deg < 0.0) deg += 360.0;
  }
  return {deg / 2.0, mx > 0.0 ? delta / mx : 0.0, mx};
}

std::array<double, 3> hsv_to_rgb(const Hsv& c) {
  const double deg = c.h * 2.0;
  const double sector = deg / 60.0;
  const int i = static_cast<int>(std::floor(sector)) % 6;
  const double f = sector - std::floor(sector);
  const double p = c.v * (1.0 - c.s);
  const double q = c.v * (1.0 - c.s * f);
  const double t = c.v * (1.0 - c.s * (1.0 - f));
  switch (i) {
    case 0: return {c.v, t, p};
    case 1: return {q, c.v, p};
    case 2: return {p, c.v, t};
    case 3: return {p, q, c.v};
    case 4: return {t, p, c.v};
    default: return {c.v, p, q};
  }
}

}  // namespace

ImageBuffer apply_hsv_shift(const ImageBuffer& image, double hue, double sat, double val) {
  ImageBuffer out = image;
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    Hsv c = rgb_to_hsv(px[i], px[i + 1], px[i + 2]);
    c.h = std::fmod(c.h + hue, 180.0);
    if (c.h < 0.0) c.h += 180.0;
    c.s = std::clamp(c.s * 255.0 + sat, 0.0, 255.0) / 255.0;
    c.v = std::clamp(c.v + val, 0.0, 255.0);
    const auto rgb = hsv_to_rgb(c);
    for (std::size_t k = 0; k < 3; ++k) px[i + k] = to_u8(rgb[k]);
  }
  return out;
}

Augmented hsv_shift(const ImageBuffer& image, std::span<const BBox> boxes, Rng& rng,
                    const HsvShiftLimits& limits) {
  const double dh = rng.uniform(-limits.hue, limits.hue);
  const double ds = rng.uniform(-limits.sat, limits.sat);
  const double dv = rng.uniform(-limits.val, limits.val);
  return {apply_hsv_shift(image, dh, ds, dv), copy_boxes(boxes)};
}

ImageBuffer apply_brightness_contrast(const ImageBuffer& image, double brightness, double contrast) {
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    lut[static_cast<std::size_t>(v)] = to_u8((v - 128.0) * (1.0 + contrast) + 128.0 + 255.0 * brightness);
  }
  return map_channels(image, [&](std::uint8_t v, std::size_t) { return lut[v]; });
}

Augmented brightness_contrast(const ImageBuffer& image, std::span<const BBox> boxes, Rng& rng,
                              const BrightnessContrastLimits& limits) {
  const double b = rng.uniform(-limits.brightness, limits.brightness);
  const double c = rng.uniform(-limits.contrast, limits.contrast);
  return {apply_brightness_contrast(image, b, c), copy_boxes(boxes)};
}

ImageBuffer apply_gamma(const ImageBuffer& image, double gamma) {
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    lut[static_cast<std::size_t>(v)] = to_u8(255.0 * std::pow(v / 255.0, gamma));
  }
  return map_channels(image, [&](std::uint8_t v, std::size_t) { return lut[v]; });
}

Augmented gamma_correction(const ImageBuffer& image, std::span<const BBox> boxes, Rng& rng,
                           const GammaRange& range) {
  return {apply_gamma(image, rng.uniform(range.lo, range.hi)), copy_boxes(boxes)};
}

Augmented clahe(const ImageBuffer& image, std::span<const BBox> boxes, const ClaheParams& params) {
  return {apply_clahe(image, params), copy_boxes(boxes)};
}

AugmentationKind kind_of(const AugmentationStep& step) {
  return static_cast<AugmentationKind>(step.index());
}

AugmentationStep default_step(AugmentationKind kind) {
  switch (kind) {
    case AugmentationKind::HorizontalFlip: return HorizontalFlipStep{};
    case AugmentationKind::Transpose: return TransposeStep{};
    case AugmentationKind::RandomRotate90: return RandomRotate90Step{};
    case AugmentationKind::RGBShift: return RgbShiftLimits{};
    case AugmentationKind::HSVShift: return HsvShiftLimits{};
    case AugmentationKind::BrightnessContrast: return BrightnessContrastLimits{};
    case AugmentationKind::GammaCorrection: return GammaRange{};
    case AugmentationKind::CLAHE: return ClaheParams{};
  }
  throw ParameterError("unknown augmentation kind");
}

AugmentationPipeline AugmentationPipeline::all_kinds(std::uint64_t seed) {
  AugmentationPipeline p;
  p.seed = seed;
  for (std::size_t k = 0; k < kAugmentationKindCount; ++k) {
    p.steps.push_back(default_step(static_cast<AugmentationKind>(k)));
  }
  return p;
}

namespace {

struct StepRunner {
  Augmented& cur;
  Rng& rng;

  void operator()(const HorizontalFlipStep&) { cur = horizontal_flip(cur.image, cur.boxes); }
  void operator()(const TransposeStep&) { cur = transpose(cur.image, cur.boxes); }
  void operator()(const RandomRotate90Step&) {
    cur = rotate90(cur.image, cur.boxes, static_cast<int>(rng.uniform_index(4)));
  }
  void operator()(const RgbShiftLimits& l) { cur = rgb_shift(cur.image, cur.boxes, rng, l); }
  void operator()(const HsvShiftLimits& l) { cur = hsv_shift(cur.image, cur.boxes, rng, l); }
  void operator()(const BrightnessContrastLimits& l) {
    cur = brightness_contrast(cur.image, cur.boxes, rng, l);
  }
  void operator()(const GammaRange& r) { cur = gamma_correction(cur.image, cur.boxes, rng, r); }
  void operator()(const ClaheParams& p) { cur = clahe(cur.image, cur.boxes, p); }
};

}  // namespace

PipelineResult apply_pipeline(const ImageBuffer& image, std::span<const BBox> boxes,
                              const AugmentationPipeline& pipeline) {
  return apply_pipeline(image, boxes, pipeline, pipeline.seed);
}

PipelineResult apply_pipeline(const ImageBuffer& image, std::span<const BBox> boxes,
                              const AugmentationPipeline& pipeline, std::uint64_t sample_seed) {
  Augmented cur{image, copy_boxes(boxes)};
  std::vector<AugmentationKind> applied;
  for (std::size_t i = 0; i < pipeline.steps.size(); ++i) {
    Rng rng(derive_seed(sample_seed, i));
    if (!(rng.uniform01() < AugmentationPipeline::kTriggerProbability)) continue;
    std::visit(StepRunner{cur, rng}, pipeline.steps[i]);
    applied.push_back(kind_of(pipeline.steps[i]));
  }
  return {std::move(cur.image), std::move(cur.boxes), std::move(applied)};
}

}  // namespace uavdet
