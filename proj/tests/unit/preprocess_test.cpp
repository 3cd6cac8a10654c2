#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "radex/error.hpp"
#include "radex/preprocess.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace radex {
namespace {

ImageGrid rgb_pixel(double r, double g, double b) {
  return ImageGrid(1, 1, 3, std::vector<double>{r, g, b});
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no radex::Error thrown";
  return ErrorCode::kIo;
}

TEST(Grayscale, LuminanceWeights) {
  EXPECT_DOUBLE_EQ(to_grayscale(rgb_pixel(1, 1, 1)).at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(to_grayscale(rgb_pixel(0, 1, 0)).at(0, 0), 0.587);
  for (double g : {0.0, 0.25, 0.6}) EXPECT_NEAR(to_grayscale(rgb_pixel(g, g, g)).at(0, 0), g, 1e-15);
  EXPECT_EQ(code_of([] { to_grayscale(ImageGrid(2, 2)); }), ErrorCode::kChannelMismatch);
}

TEST(Crop, CentredBlock) {
  ImageGrid image(10, 10);
  for (std::size_t r = 3; r < 7; ++r) {
    for (std::size_t c = 3; c < 7; ++c) image.at(r, c) = 0.8;
  }
  const ImageGrid cropped = crop_black_border(image, 0.03);
  EXPECT_EQ(cropped.width(), 4u);
  EXPECT_EQ(cropped.height(), 4u);
  for (double v : cropped.pixels()) EXPECT_EQ(v, 0.8);
}

TEST(Crop, NoBorderIsIdentity) {
  const ImageGrid image(7, 5, 1, 0.5);
  EXPECT_EQ(crop_black_border(image, 0.03), image);
}

TEST(Crop, AllBlackIsEmptyRetina) {
  EXPECT_EQ(code_of([] { crop_black_border(ImageGrid(12, 12), 0.03); }), ErrorCode::kEmptyRetina);
  EXPECT_EQ(code_of([] { crop_black_border(ImageGrid(12, 12, 3), 0.03); }), ErrorCode::kEmptyRetina);
}

TEST(Crop, Idempotent) {
  const ImageGrid fundus = testing_fixtures::fundus_like(90, 70);
  const ImageGrid once = crop_black_border(fundus, 0.03);
  EXPECT_EQ(crop_black_border(once, 0.03), once);
  EXPECT_LT(once.width(), 90u);
  EXPECT_EQ(once.channels(), 3u);
}

TEST(Resize, CornerAlignedSampling) {
  const ImageGrid src(2, 2, 1, std::vector<double>{0.0, 1.0, 0.5, 0.25});
  const ImageGrid out = resize_bilinear(src, 3, 3);
  EXPECT_EQ(out.at(0, 0), 0.0);
  EXPECT_EQ(out.at(0, 2), 1.0);
  EXPECT_EQ(out.at(2, 0), 0.5);
  EXPECT_EQ(out.at(2, 2), 0.25);
  EXPECT_DOUBLE_EQ(out.at(1, 1), (0.0 + 1.0 + 0.5 + 0.25) / 4.0);
  EXPECT_DOUBLE_EQ(out.at(0, 1), 0.5);
}

TEST(Resize, ConstantStaysConstant) {
  const ImageGrid out = resize_bilinear(ImageGrid(13, 7, 3, 0.3), 32, 32);
  for (double v : out.pixels()) EXPECT_DOUBLE_EQ(v, 0.3);
}

TEST(GaussianBlur, MatchesDirectConvolution) {
  const ImageGrid image = testing_fixtures::random_image(16, 11);
  for (double sigma : {0.7, 2.0, 6.0}) {
    const ImageGrid blurred = gaussian_blur(image, sigma);
    const auto expected = oracle::gaussian_blur({image.pixels().begin(), image.pixels().end()}, 16, 16, sigma);
    for (std::size_t i = 0; i < expected.size(); ++i) ASSERT_NEAR(blurred.pixels()[i], expected[i], 1e-12);
  }
}

TEST(GaussianBlur, PreservesMassOfInteriorSupport) {
  const ImageGrid disk = testing_fixtures::centered_disk(64, 8.0);
  const double before = std::accumulate(disk.pixels().begin(), disk.pixels().end(), 0.0);
  const ImageGrid blurred = gaussian_blur(disk, 3.0);
  const double after = std::accumulate(blurred.pixels().begin(), blurred.pixels().end(), 0.0);
  EXPECT_NEAR(after, before, 1e-6);
}

TEST(GaussianBlur, ZeroSigmaAndErrors) {
  const ImageGrid image = testing_fixtures::random_image(8, 1);
  EXPECT_EQ(gaussian_blur(image, 0.0), image);
  EXPECT_THROW(gaussian_blur(image, -1.0), Error);
}

TEST(GaussianBlur, KernelWiderThanImage) {
  const ImageGrid out = gaussian_blur(ImageGrid(5, 3, 1, 0.4), 10.0);
  for (double v : out.pixels()) EXPECT_NEAR(v, 0.4, 1e-12);
}

TEST(Graham, ConstantImageGoesToGamma) {
  const PreprocessConfig config;
  for (double v : {0.0, 0.3, 1.0}) {
    const ImageGrid out = graham_normalize(ImageGrid(24, 24, 3, v), config);
    for (double x : out.pixels()) ASSERT_NEAR(x, 0.5, 1e-12);
  }
}

TEST(Graham, IdentityWeights) {
  PreprocessConfig config;
  config.graham_alpha = 1.0;
  config.graham_beta = 0.0;
  config.graham_gamma = 0.0;
  const ImageGrid image = testing_fixtures::random_image(16, 2);
  EXPECT_EQ(graham_normalize(image, config), image);
}

TEST(Graham, StepEdgeAgainstDirectConvolution) {
  ImageGrid edge(16, 16);
  for (std::size_t r = 0; r < 16; ++r) {
    for (std::size_t c = 0; c < 16; ++c) edge.at(r, c) = c < 8 ? 0.45 : 0.55;
  }
  PreprocessConfig config;
  config.graham_sigma = 2.0;
  const ImageGrid out = graham_normalize(edge, config);
  const auto blur = oracle::gaussian_blur({edge.pixels().begin(), edge.pixels().end()}, 16, 16, 2.0);
  for (std::size_t i = 0; i < blur.size(); ++i) {
    const double expected = std::clamp(4.0 * edge.pixels()[i] - 4.0 * blur[i] + 0.5, 0.0, 1.0);
    ASSERT_NEAR(out.pixels()[i], expected, 1e-12);
  }
  // Across the transition the blurred copy is nearly flat, so the contrast
  // is amplified by close to |alpha|.
  const double in_step = edge.at(8, 8) - edge.at(8, 7);
  const double out_step = out.at(8, 8) - out.at(8, 7);
  EXPECT_GT(out_step, 2.0 * in_step);
  EXPECT_LE(out_step, 4.0 * in_step + 1e-12);
}

TEST(Pipeline, DefaultsProduceSquare512) {
  const ImageGrid out = preprocess_pipeline(testing_fixtures::fundus_like(300, 260), PreprocessConfig{});
  EXPECT_EQ(out.width(), 512u);
  EXPECT_EQ(out.height(), 512u);
  EXPECT_EQ(out.channels(), 1u);
  EXPECT_TRUE(in_unit_range(out));
  const auto [lo, hi] = std::minmax_element(out.pixels().begin(), out.pixels().end());
  EXPECT_LT(*lo, *hi);
}

TEST(Pipeline, SmallDiskFixtureStaysInRange) {
  PreprocessConfig config;
  config.target_side = 64;
  const ImageGrid out = preprocess_pipeline(testing_fixtures::centered_disk(40, 15.0, 0.7), config);
  EXPECT_EQ(out.width(), 64u);
  EXPECT_TRUE(in_unit_range(out));
}

TEST(Pipeline, DeterministicAndTypedErrors) {
  PreprocessConfig config;
  config.target_side = 48;
  const ImageGrid fundus = testing_fixtures::fundus_like(80, 64);
  EXPECT_EQ(preprocess_pipeline(fundus, config), preprocess_pipeline(fundus, config));
  EXPECT_EQ(code_of([&] { preprocess_pipeline(ImageGrid(40, 40, 3), config); }), ErrorCode::kEmptyRetina);
  EXPECT_EQ(code_of([&] { preprocess_pipeline(ImageGrid(40, 40, 2, 0.5), config); }),
            ErrorCode::kChannelMismatch);
  config.target_side = 8;
  EXPECT_EQ(code_of([&] { preprocess_pipeline(fundus, config); }), ErrorCode::kInvalidConfig);
}

TEST(PreprocessConfigJson, OverlayAndDefaults) {
  const PreprocessConfig c = preprocess_config_from_json(R"({"target_side": 300, "denoise_sigma": 0})");
  EXPECT_EQ(c.target_side, 300u);
  EXPECT_EQ(c.denoise_sigma, 0.0);
  EXPECT_DOUBLE_EQ(c.resolved_graham_sigma(), 10.0);
  EXPECT_EQ(c.graham_alpha, 4.0);
  EXPECT_THROW(preprocess_config_from_json("[1]"), Error);
}

}  // namespace
}  // namespace radex
