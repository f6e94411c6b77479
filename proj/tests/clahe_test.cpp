#include <gtest/gtest.h>

#include <cstdlib>

#include "oracles/clahe_reference.hpp"
#include "test_support.hpp"
#include "uavdet/augment.hpp"
#include "uavdet/error.hpp"

namespace uavdet {
namespace {

int max_abs_diff(const ImageBuffer& a, const ImageBuffer& b) {
  int worst = 0;
  for (std::size_t i = 0; i < a.pixels().size(); ++i)
    worst = std::max(worst, std::abs(int(a.pixels()[i]) - int(b.pixels()[i])));
  return worst;
}

ImageBuffer gradient(int w, int h) {
  ImageBuffer img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const auto v = static_cast<std::uint8_t>((x * 7 + y * 3) % 256);
      img.set(x, y, {v, static_cast<std::uint8_t>(v / 2), static_cast<std::uint8_t>(255 - v)});
    }
  return img;
}

TEST(ClaheTest, ConstantImageUnchanged) {
  for (Rgb c : {Rgb{0, 0, 0}, Rgb{255, 255, 255}, Rgb{37, 200, 90}}) {
    const ImageBuffer img(40, 24, c);
    EXPECT_EQ(apply_clahe(img), img);
  }
}

TEST(ClaheTest, TwoTileGradientMatchesReference) {
  const auto img = gradient(16, 16);
  const auto out = apply_clahe(img, {4.0, 2});
  EXPECT_LE(max_abs_diff(out, oracle::ref_clahe(img, 2, 4.0)), 2);
}

TEST(ClaheTest, DefaultGridMatchesReference) {
  Rng rng(21);
  const auto g = gradient(16, 16);
  EXPECT_LE(max_abs_diff(apply_clahe(g), oracle::ref_clahe(g, 8, 4.0)), 2);
  const auto r = testing::random_image(rng, 37, 29);
  EXPECT_LE(max_abs_diff(apply_clahe(r, {2.5, 3}), oracle::ref_clahe(r, 3, 2.5)), 2);
}

TEST(ClaheTest, LowContrastIsStretched) {
  ImageBuffer img(32, 32);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      const auto v = static_cast<std::uint8_t>(100 + (x + y) % 8);
      img.set(x, y, {v, v, v});
    }
  const auto out = apply_clahe(img, {40.0, 1});
  int lo = 255, hi = 0;
  for (auto v : out.pixels()) {
    lo = std::min(lo, int(v));
    hi = std::max(hi, int(v));
  }
  EXPECT_GT(hi - lo, 100);
}

TEST(ClaheTest, OutputsInRangeForRandomInputs) {
  Rng rng(22);
  for (int i = 0; i < 10; ++i) {
    const auto img = testing::random_image(rng, rng.uniform_int(8, 50), rng.uniform_int(8, 50));
    const auto out = apply_clahe(img);
    EXPECT_EQ(out.width(), img.width());
    EXPECT_EQ(out.height(), img.height());
  }
}

TEST(ClaheTest, GrayStaysGray) {
  Rng rng(23);
  ImageBuffer img(20, 20);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x) {
      const auto v = static_cast<std::uint8_t>(rng.uniform_index(256));
      img.set(x, y, {v, v, v});
    }
  const auto out = apply_clahe(img);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x) {
      const auto c = out.at(x, y);
      EXPECT_EQ(c[0], c[1]);
      EXPECT_EQ(c[1], c[2]);
    }
}

TEST(ClaheTest, TooSmallImageThrows) {
  EXPECT_THROW(apply_clahe(ImageBuffer(7, 20)), ParameterError);
  EXPECT_THROW(apply_clahe(ImageBuffer(20, 7)), ParameterError);
  EXPECT_NO_THROW(apply_clahe(ImageBuffer(8, 8)));
  EXPECT_THROW(apply_clahe(ImageBuffer(8, 8), {0.0, 8}), ParameterError);
}

}  // namespace
}  // namespace uavdet
