#include "uavdet/scene.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "json_config.hpp"
#include "uavdet/error.hpp"
#include "uavdet/random.hpp"

namespace uavdet {
namespace {

constexpr int kPlacementTries = 200;
constexpr int kGap = 2;  // free pixels kept between objects
constexpr int kMinObjectSize = 4;

struct Footprint {
  int x;
  int y;
  int w;
  int h;
};

bool overlaps(const Footprint& a, const Footprint& b) {
  return a.x < b.x + b.w + kGap && b.x < a.x + a.w + kGap && a.y < b.y + b.h + kGap &&
         b.y < a.y + a.h + kGap;
}

void validate(const SceneSpec& s) {
  if (s.width <= 0 || s.height <= 0) {
    throw ParameterError(fmt::format("scene: dimensions must be positive, got {}x{}", s.width, s.height));
  }
  for (const auto& [name, r] : {std::pair{"obstacle", s.obstacle_count}, std::pair{"person", s.person_count}}) {
    if (r.min < 0 || r.max < r.min) {
      throw ParameterError(fmt::format("scene: {} count range [{}, {}] is invalid", name, r.min, r.max));
    }
  }
  if (s.size_range.min < kMinObjectSize || s.size_range.max < s.size_range.min) {
    throw ParameterError(fmt::format("scene: size range [{}, {}] must satisfy {} <= min <= max",
                                     s.size_range.min, s.size_range.max, kMinObjectSize));
  }
}

void paint_background(ImageBuffer& img, const SceneSpec& spec, Rng& rng) {
  if (spec.background == Background::Flat) {
    const Rgb c{static_cast<std::uint8_t>(rng.uniform_int(90, 140)),
                static_cast<std::uint8_t>(rng.uniform_int(100, 150)),
                static_cast<std::uint8_t>(rng.uniform_int(80, 120))};
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) img.set(x, y, c);
    }
    return;
  }
  // Snow above a slanted edge, grass below.
  const Rgb snow{static_cast<std::uint8_t>(rng.uniform_int(225, 245)),
                 static_cast<std::uint8_t>(rng.uniform_int(228, 248)),
                 static_cast<std::uint8_t>(rng.uniform_int(232, 252))};
  const Rgb grass{static_cast<std::uint8_t>(rng.uniform_int(55, 85)),
                  static_cast<std::uint8_t>(rng.uniform_int(105, 140)),
                  static_cast<std::uint8_t>(rng.uniform_int(45, 75))};
  const double edge0 = rng.uniform(0.3, 0.7) * img.height();
  const double slope = rng.uniform(-0.3, 0.3);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) img.set(x, y, y < edge0 + slope * x ? snow : grass);
  }
}

// Paints the pixels selected by `inside(px, py)` over the footprint and
// returns their bounding rectangle.
template <typename Inside>
std::optional<BBox> paint(ImageBuffer& img, const Footprint& f, Rgb color, int class_id, Inside inside) {
  int x0 = f.x + f.w;
  int y0 = f.y + f.h;
  int x1 = f.x - 1;
  int y1 = f.y - 1;
  for (int y = f.y; y < f.y + f.h; ++y) {
    for (int x = f.x; x < f.x + f.w; ++x) {
      if (!inside(x - f.x + 0.5, y - f.y + 0.5)) continue;
      img.set(x, y, color);
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < x0) return std::nullopt;
  return BBox{static_cast<double>(x0), static_cast<double>(y0), static_cast<double>(x1 + 1),
              static_cast<double>(y1 + 1), class_id};
}

Footprint place(const SceneSpec& spec, int w, int h, const std::vector<Footprint>& taken, Rng& rng,
                const char* what) {
  if (w <= spec.width && h <= spec.height) {
    for (int attempt = 0; attempt < kPlacementTries; ++attempt) {
      const Footprint f{rng.uniform_int(0, spec.width - w), rng.uniform_int(0, spec.height - h), w, h};
      if (std::none_of(taken.begin(), taken.end(), [&](const Footprint& t) { return overlaps(f, t); })) {
        return f;
      }
    }
  }
  throw PlacementError(fmt::format("scene: could not place a {}x{} {} in a {}x{} frame after {} tries",
                                   w, h, what, spec.width, spec.height, kPlacementTries));
}

}  // namespace

Scene generate_scene(const SceneSpec& spec, std::string image_id) {
  validate(spec);
  Rng rng(spec.seed);
  Scene scene{ImageBuffer(spec.width, spec.height), LabeledImage{std::move(image_id), spec.width, spec.height, {}}};
  paint_background(scene.image, spec, rng);

  std::vector<Footprint> taken;
  const int obstacles = rng.uniform_int(spec.obstacle_count.min, spec.obstacle_count.max);
  const int persons = rng.uniform_int(spec.person_count.min, spec.person_count.max);

  for (int i = 0; i < obstacles; ++i) {
    const int w = rng.uniform_int(spec.size_range.min, spec.size_range.max);
    const int h = rng.uniform_int(spec.size_range.min, spec.size_range.max);
    const bool ellipse = rng.bernoulli(0.5);
    const Rgb color{static_cast<std::uint8_t>(rng.uniform_int(30, 110)),
                    static_cast<std::uint8_t>(rng.uniform_int(25, 80)),
                    static_cast<std::uint8_t>(rng.uniform_int(15, 60))};
    const Footprint f = place(spec, w, h, taken, rng, "obstacle");
    taken.push_back(f);
    const double rx = w / 2.0;
    const double ry = h / 2.0;
    auto box = paint(scene.image, f, color, 0, [&](double px, double py) {
      if (!ellipse) return true;
      const double dx = (px - rx) / rx;
      const double dy = (py - ry) / ry;
      return dx * dx + dy * dy <= 1.0;
    });
    if (box) scene.labels.boxes.push_back(*box);
  }

  for (int i = 0; i < persons; ++i) {
    const int h = rng.uniform_int(spec.size_range.min, spec.size_range.max);
    const int w = std::max(kMinObjectSize, static_cast<int>(std::lround(h / 3.0)));
    const Rgb color{static_cast<std::uint8_t>(rng.uniform_int(180, 240)),
                    static_cast<std::uint8_t>(rng.uniform_int(30, 90)),
                    static_cast<std::uint8_t>(rng.uniform_int(20, 70))};
    const Footprint f = place(spec, w, h, taken, rng, "person");
    taken.push_back(f);
    const double r = w / 2.0;
    const double top = r;
    const double bottom = std::max(r, h - r);
    auto box = paint(scene.image, f, color, 1, [&](double px, double py) {
      const double cy = std::clamp(py, top, bottom);
      const double dx = px - r;
      const double dy = py - cy;
      return dx * dx + dy * dy <= r * r;
    });
    if (box) scene.labels.boxes.push_back(*box);
  }
  return scene;
}

SceneSpec parse_scene_spec(std::string_view json_text) {
  return detail::scene_spec_from_json(detail::parse_json_object(json_text, "scene spec"), "scene spec");
}

}  // namespace uavdet
