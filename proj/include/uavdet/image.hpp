#ifndef UAVDET_IMAGE_HPP_
#define UAVDET_IMAGE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace uavdet {

using Rgb = std::array<std::uint8_t, 3>;

// Row-major W x H x 3 raster of 8-bit RGB samples.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(int width, int height, Rgb fill = {0, 0, 0});
  // Takes ownership of a row-major RGB buffer. Throws ParameterError if
  // pixels.size() != width*height*3.
  static ImageBuffer from_pixels(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  Rgb at(int x, int y) const {
    const auto* p = &pixels_[offset(x, y)];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) {
    auto* p = &pixels_[offset(x, y)];
    p[0] = c[0];
    p[1] = c[1];
    p[2] = c[2];
  }
  std::uint8_t channel(int x, int y, int c) const { return pixels_[offset(x, y) + c]; }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  bool operator==(const ImageBuffer&) const = default;

 private:
  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// 8-bit RGB PNG. Reading accepts gray/palette/alpha/16-bit inputs and
// converts them; writing is deterministic (fixed compression, no
// timestamps). Throws IoError.
ImageBuffer read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ImageBuffer& image);

// Width/height from the PNG header without decoding pixels.
std::array<int, 2> png_dimensions(const std::filesystem::path& path);

}  // namespace uavdet

#endif  // UAVDET_IMAGE_HPP_
