#ifndef UAVDET_AUGMENT_HPP_
#define UAVDET_AUGMENT_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uavdet/geometry.hpp"
#include "uavdet/image.hpp"
#include "uavdet/random.hpp"

namespace uavdet {

// Listing order is also pipeline order.
enum class AugmentationKind {
  HorizontalFlip,
  Transpose,
  RandomRotate90,
  RGBShift,
  HSVShift,
  BrightnessContrast,
  GammaCorrection,
  CLAHE,
};

inline constexpr std::size_t kAugmentationKindCount = 8;

std::string_view kind_name(AugmentationKind kind);

struct Augmented {
  ImageBuffer image;
  std::vector<BBox> boxes;
};

// Geometric transforms. Boxes are mapped corner-wise and re-normalized
// to min/max; class ids are kept.

Augmented horizontal_flip(const ImageBuffer& image, std::span<const BBox> boxes);

// Swaps rows and columns: pixel (x,y) -> (y,x), output is H x W.
Augmented transpose(const ImageBuffer& image, std::span<const BBox> boxes);

// k clockwise quarter turns (y axis points down). One turn sends pixel
// (x,y) of a W x H image to (H-1-y, x) of an H x W image. Throws
// ParameterError unless 0 <= k <= 3.
Augmented rotate90(const ImageBuffer& image, std::span<const BBox> boxes, int k);

// Photometric transforms never touch boxes or dimensions. Each has a
// deterministic `apply_*` form and a form that draws its parameters
// (one value per parameter per image) from an Rng.

struct RgbShiftLimits {
  double r = 20.0;
  double g = 20.0;
  double b = 20.0;
};

struct HsvShiftLimits {
  double hue = 20.0;  // on the 0..179 hue wheel
  double sat = 30.0;
  double val = 20.0;
};

struct BrightnessContrastLimits {
  double brightness = 0.2;
  double contrast = 0.2;
};

struct GammaRange {
  double lo = 0.5;
  double hi = 1.5;
};

struct ClaheParams {
  double clip_limit = 4.0;  // multiple of the uniform bin height
  int tile_grid = 8;        // tiles per side
};

// Per-channel additive shift, result rounded and clamped to [0,255].
ImageBuffer apply_rgb_shift(const ImageBuffer& image, const std::array<double, 3>& shift);
Augmented rgb_shift(const ImageBuffer& image, std::span<const BBox> boxes, Rng& rng,
                    const RgbShiftLimits& limits = {});

// Hue wraps on [0,180); saturation and value (0..255 scale) are clamped.
ImageBuffer apply_hsv_shift(const ImageBuffer& image, double hue, double sat, double val);
Augmented hsv_shift(const ImageBuffer& image, std::span<const BBox> boxes, Rng& rng,
                    const HsvShiftLimits& limits = {});

// out = (in - 128) * (1 + contrast) + 128 + 255 * brightness.
ImageBuffer apply_brightness_contrast(const ImageBuffer& image, double brightness, double contrast);
Augmented brightness_contrast(const ImageBuffer& image, std::span<const BBox> boxes, Rng& rng,
                              const BrightnessContrastLimits& limits = {});

// out = round(255 * (in / 255)^gamma).
ImageBuffer apply_gamma(const ImageBuffer& image, double gamma);
Augmented gamma_correction(const ImageBuffer& image, std::span<const BBox> boxes, Rng& rng,
                           const GammaRange& range = {});

// Contrast-limited adaptive histogram equalization of luma
// (Y = 0.299 R + 0.587 G + 0.114 B). Each pixel's three channels move by
// the same luma delta, so chroma (B - Y, R - Y) is preserved up to
// rounding. Tiles whose luma is constant keep the identity mapping.
// Throws ParameterError if the image is smaller than the tile grid.
ImageBuffer apply_clahe(const ImageBuffer& image, const ClaheParams& params = {});
Augmented clahe(const ImageBuffer& image, std::span<const BBox> boxes, const ClaheParams& params = {});

// Pipeline steps. The alternative index equals the AugmentationKind value.
struct HorizontalFlipStep {};
struct TransposeStep {};
struct RandomRotate90Step {};  // k drawn uniformly from {0,1,2,3}

using AugmentationStep = std::variant<HorizontalFlipStep, TransposeStep, RandomRotate90Step,
                                      RgbShiftLimits, HsvShiftLimits, BrightnessContrastLimits,
                                      GammaRange, ClaheParams>;

AugmentationKind kind_of(const AugmentationStep& step);
AugmentationStep default_step(AugmentationKind kind);

struct AugmentationPipeline {
  static constexpr double kTriggerProbability = 0.5;

  std::vector<AugmentationStep> steps;
  std::uint64_t seed = 0;

  // All eight kinds with default parameters, in listing order.
  static AugmentationPipeline all_kinds(std::uint64_t seed);
};

struct PipelineResult {
  ImageBuffer image;
  std::vector<BBox> boxes;
  std::vector<AugmentationKind> applied;
};

// Visits steps in order. Step i draws from its own stream derived from
// (seed, i): first the trigger draw (applied iff < 0.5), then its
// parameters. Whether a step fires therefore depends only on the seed and
// its position.
PipelineResult apply_pipeline(const ImageBuffer& image, std::span<const BBox> boxes,
                              const AugmentationPipeline& pipeline);

// Same, with `sample_seed` in place of pipeline.seed (one pipeline, many
// samples).
PipelineResult apply_pipeline(const ImageBuffer& image, std::span<const BBox> boxes,
                              const AugmentationPipeline& pipeline, std::uint64_t sample_seed);

// Pipeline configuration text, one step per line:
//
//   horizontal_flip
//   transpose
//   random_rotate90
//   rgb_shift [LIMIT | R G B]
//   hsv_shift [HUE SAT VAL]
//   brightness_contrast [BRIGHTNESS CONTRAST]
//   gamma [LO HI]
//   clahe [CLIP [TILES]]
//
// Blank lines and text after '#' are ignored. Unknown names or bad
// arguments throw ConfigError with the line number.
AugmentationPipeline parse_pipeline_config(std::string_view text, std::uint64_t seed);

}  // namespace uavdet

#endif  // UAVDET_AUGMENT_HPP_
