#include "uavdet/resize.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "uavdet/error.hpp"

namespace uavdet {

std::string_view method_name(ResizeMethod method) {
  return method == ResizeMethod::Stretch ? "stretch" : "letterbox";
}

ResizeMethod parse_resize_method(std::string_view name) {
  if (name == "stretch") return ResizeMethod::Stretch;
  if (name == "letterbox") return ResizeMethod::Letterbox;
  throw ParameterError(fmt::format("unknown resize method '{}' (expected stretch or letterbox)", name));
}

ResizePlan plan_resize(ResizeMethod method, int source_w, int source_h, int target) {
  if (source_w <= 0 || source_h <= 0 || target <= 0) {
    throw ParameterError(fmt::format("resize: dimensions must be positive ({}x{} -> {})", source_w,
                                     source_h, target));
  }
  ResizePlan plan;
  plan.method = method;
  plan.source_w = source_w;
  plan.source_h = source_h;
  plan.target = target;
  if (method == ResizeMethod::Stretch) {
    plan.scale_x = static_cast<double>(target) / source_w;
    plan.scale_y = static_cast<double>(target) / source_h;
    plan.content_w = target;
    plan.content_h = target;
    return plan;
  }
  const double scale = std::min(static_cast<double>(target) / source_w,
                                static_cast<double>(target) / source_h);
  plan.scale_x = scale;
  plan.scale_y = scale;
  plan.content_w = std::min(target, static_cast<int>(std::lround(source_w * scale)));
  plan.content_h = std::min(target, static_cast<int>(std::lround(source_h * scale)));
  plan.pad_left = (target - plan.content_w) / 2;
  plan.pad_top = (target - plan.content_h) / 2;
  return plan;
}

namespace {

// Source sample coordinate for destination index `d` on one axis, with
// pixel centers aligned and clamped to the valid range.
double source_coord(int d, int pad, double scale, int source_size) {
  const double s = (d - pad + 0.5) / scale - 0.5;
  return std::clamp(s, 0.0, static_cast<double>(source_size - 1));
}

}  // namespace

ImageBuffer apply_resize(const ImageBuffer& image, const ResizePlan& plan) {
  if (image.width() != plan.source_w || image.height() != plan.source_h) {
    throw PlanError(fmt::format("resize: image is {}x{} but the plan expects {}x{}", image.width(),
                                image.height(), plan.source_w, plan.source_h));
  }
  ImageBuffer out(plan.target, plan.target);
  const int x_end = plan.pad_left + plan.content_w;
  const int y_end = plan.pad_top + plan.content_h;

  struct Tap {
    int i0;
    int i1;
    double w;
  };
  auto taps = [](int pad, int count, double scale, int source_size) {
    std::vector<Tap> t(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      const double s = source_coord(pad + k, pad, scale, source_size);
      const int i0 = static_cast<int>(std::floor(s));
      const int i1 = std::min(i0 + 1, source_size - 1);
      t[static_cast<std::size_t>(k)] = {i0, i1, s - i0};
    }
    return t;
  };
  const auto tx = taps(plan.pad_left, plan.content_w, plan.scale_x, plan.source_w);
  const auto ty = taps(plan.pad_top, plan.content_h, plan.scale_y, plan.source_h);

  for (int y = plan.pad_top; y < y_end; ++y) {
    const Tap& vy = ty[static_cast<std::size_t>(y - plan.pad_top)];
    for (int x = plan.pad_left; x < x_end; ++x) {
      const Tap& vx = tx[static_cast<std::size_t>(x - plan.pad_left)];
      Rgb px{};
      for (int c = 0; c < 3; ++c) {
        const double top = (1.0 - vx.w) * image.channel(vx.i0, vy.i0, c) + vx.w * image.channel(vx.i1, vy.i0, c);
        const double bot = (1.0 - vx.w) * image.channel(vx.i0, vy.i1, c) + vx.w * image.channel(vx.i1, vy.i1, c);
        const double v = (1.0 - vy.w) * top + vy.w * bot;
        px[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
      }
      out.set(x, y, px);
    }
  }
  return out;
}

BBox map_box_forward(const BBox& b, const ResizePlan& plan) {
  return BBox{b.x_min * plan.scale_x + plan.pad_left, b.y_min * plan.scale_y + plan.pad_top,
              b.x_max * plan.scale_x + plan.pad_left, b.y_max * plan.scale_y + plan.pad_top,
              b.class_id};
}

BBox map_box_inverse(const BBox& b, const ResizePlan& plan) {
  auto ix = [&](double x) { return std::clamp((x - plan.pad_left) / plan.scale_x, 0.0, static_cast<double>(plan.source_w)); };
  auto iy = [&](double y) { return std::clamp((y - plan.pad_top) / plan.scale_y, 0.0, static_cast<double>(plan.source_h)); };
  return BBox{ix(b.x_min), iy(b.y_min), ix(b.x_max), iy(b.y_max), b.class_id};
}

}  // namespace uavdet
