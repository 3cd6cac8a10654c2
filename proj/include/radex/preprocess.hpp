#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "radex/image.hpp"

namespace radex {

struct PreprocessConfig {
  double crop_threshold = 0.03;
  std::size_t target_side = 512;
  double graham_alpha = 4.0;
  double graham_beta = -4.0;
  double graham_gamma = 0.5;
  std::optional<double> graham_sigma;  // defaults to target_side / 30
  double denoise_sigma = 1.0;

  double resolved_graham_sigma() const noexcept {
    return graham_sigma.value_or(static_cast<double>(target_side) / 30.0);
  }

  /// Throws Error(kInvalidConfig).
  void validate() const;
};

std::string preprocess_config_to_json(const PreprocessConfig& config);
PreprocessConfig preprocess_config_from_json(const std::string& text, PreprocessConfig base = {});

/// Luminance 0.299 R + 0.587 G + 0.114 B. Throws Error(kChannelMismatch)
/// unless the input has three channels.
ImageGrid to_grayscale(const ImageGrid& rgb);

/// Tight bounding box of pixels brighter than threshold (luminance for
/// colour input). Throws Error(kEmptyRetina) when nothing qualifies.
ImageGrid crop_black_border(const ImageGrid& image, double threshold);

/// Bilinear resize with corner-aligned sampling.
ImageGrid resize_bilinear(const ImageGrid& image, std::size_t width, std::size_t height);

/// Separable Gaussian, radius ceil(3 sigma), reflect-101 borders, applied per
/// channel. sigma == 0 returns the input unchanged.
ImageGrid gaussian_blur(const ImageGrid& image, double sigma);

/// clamp(alpha * I + beta * G_sigma(I) + gamma, 0, 1) per channel.
ImageGrid graham_normalize(const ImageGrid& image, const PreprocessConfig& config);

/// crop -> resize to target_side -> graham_normalize -> denoise blur ->
/// grayscale. Accepts 1- or 3-channel input; output is single-channel.
ImageGrid preprocess_pipeline(const ImageGrid& image, const PreprocessConfig& config);

}  // namespace radex
