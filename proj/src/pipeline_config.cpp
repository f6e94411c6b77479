#include <fmt/format.h>

#include "text_util.hpp"
#include "uavdet/augment.hpp"
#include "uavdet/error.hpp"

namespace uavdet {
namespace {

std::vector<double> numeric_args(const std::vector<std::string_view>& fields, std::size_t line_no) {
  std::vector<double> out;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const auto v = detail::to_double(fields[i]);
    if (!v || !std::isfinite(*v)) {
      throw ConfigError(fmt::format("line {}: '{}' is not a number", line_no, fields[i]));
    }
    out.push_back(*v);
  }
  return out;
}

void expect_args(const std::vector<double>& args, std::initializer_list<std::size_t> allowed,
                 std::string_view name, std::size_t line_no) {
  for (auto n : allowed) {
    if (args.size() == n) return;
  }
  throw ConfigError(fmt::format("line {}: wrong number of arguments for '{}'", line_no, name));
}

void expect_nonnegative(const std::vector<double>& args, std::string_view name, std::size_t line_no) {
  for (double v : args) {
    if (v < 0.0) throw ConfigError(fmt::format("line {}: '{}' limits must be >= 0", line_no, name));
  }
}

}  // namespace

AugmentationPipeline parse_pipeline_config(std::string_view text, std::uint64_t seed) {
  AugmentationPipeline pipeline;
  pipeline.seed = seed;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = detail::split_ws(line);
    if (fields.empty()) continue;
    const auto name = fields[0];
    const auto args = numeric_args(fields, line_no);

    if (name == "horizontal_flip") {
      expect_args(args, {0}, name, line_no);
      pipeline.steps.emplace_back(HorizontalFlipStep{});
    } else if (name == "transpose") {
      expect_args(args, {0}, name, line_no);
      pipeline.steps.emplace_back(TransposeStep{});
    } else if (name == "random_rotate90") {
      expect_args(args, {0}, name, line_no);
      pipeline.steps.emplace_back(RandomRotate90Step{});
    } else if (name == "rgb_shift") {
      expect_args(args, {0, 1, 3}, name, line_no);
      expect_nonnegative(args, name, line_no);
      RgbShiftLimits l;
      if (args.size() == 1) l = {args[0], args[0], args[0]};
      if (args.size() == 3) l = {args[0], args[1], args[2]};
      pipeline.steps.emplace_back(l);
    } else if (name == "hsv_shift") {
      expect_args(args, {0, 3}, name, line_no);
      expect_nonnegative(args, name, line_no);
      HsvShiftLimits l;
      if (args.size() == 3) l = {args[0], args[1], args[2]};
      pipeline.steps.emplace_back(l);
    } else if (name == "brightness_contrast") {
      expect_args(args, {0, 2}, name, line_no);
      expect_nonnegative(args, name, line_no);
      BrightnessContrastLimits l;
      if (args.size() == 2) l = {args[0], args[1]};
      pipeline.steps.emplace_back(l);
    } else if (name == "gamma") {
      expect_args(args, {0, 2}, name, line_no);
      GammaRange r;
      if (args.size() == 2) r = {args[0], args[1]};
      if (!(r.lo > 0.0 && r.lo <= r.hi)) {
        throw ConfigError(fmt::format("line {}: gamma range needs 0 < LO <= HI", line_no));
      }
      pipeline.steps.emplace_back(r);
    } else if (name == "clahe") {
      expect_args(args, {0, 1, 2}, name, line_no);
      ClaheParams p;
      if (!args.empty()) p.clip_limit = args[0];
      if (args.size() == 2) {
        if (args[1] != std::floor(args[1])) {
          throw ConfigError(fmt::format("line {}: clahe tile count must be an integer", line_no));
        }
        p.tile_grid = static_cast<int>(args[1]);
      }
      if (!(p.clip_limit > 0.0) || p.tile_grid < 1) {
        throw ConfigError(fmt::format("line {}: clahe needs CLIP > 0 and TILES >= 1", line_no));
      }
      pipeline.steps.emplace_back(p);
    } else {
      throw ConfigError(fmt::format(
          "line {}: unknown augmentation '{}' (expected horizontal_flip, transpose, "
          "random_rotate90, rgb_shift, hsv_shift, brightness_contrast, gamma, clahe)",
          line_no, name));
    }
  }
  return pipeline;
}

}  // namespace uavdet
