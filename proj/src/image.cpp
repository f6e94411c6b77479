#include "uavdet/image.hpp"

#include <fmt/format.h>

#include "uavdet/error.hpp"

namespace uavdet {

ImageBuffer::ImageBuffer(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw ParameterError(fmt::format("image dimensions must be positive, got {}x{}", width, height));
  }
  pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill[0];
    pixels_[i + 1] = fill[1];
    pixels_[i + 2] = fill[2];
  }
}

ImageBuffer ImageBuffer::from_pixels(int width, int height, std::vector<std::uint8_t> pixels) {
  if (width <= 0 || height <= 0) {
    throw ParameterError(fmt::format("image dimensions must be positive, got {}x{}", width, height));
  }
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3) {
    throw ParameterError(fmt::format("pixel buffer has {} bytes, expected {}x{}x3", pixels.size(),
                                     width, height));
  }
  ImageBuffer img;
  img.width_ = width;
  img.height_ = height;
  img.pixels_ = std::move(pixels);
  return img;
}

}  // namespace uavdet
