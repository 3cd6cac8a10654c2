#include "radex/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <vector>

#include "radex/error.hpp"

namespace radex {
namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaG = 0.587;
constexpr double kLumaB = 0.114;

double luminance(const ImageGrid& image, std::size_t row, std::size_t col) {
  if (image.channels() == 1) return image.at(row, col);
  return kLumaR * image.at(row, col, 0) + kLumaG * image.at(row, col, 1) +
         kLumaB * image.at(row, col, 2);
}

void require_gray_or_rgb(const ImageGrid& image) {
  if (image.channels() != 1 && image.channels() != 3) {
    throw Error(ErrorCode::kChannelMismatch,
                "expected 1 or 3 channels, got " + std::to_string(image.channels()));
  }
}

// Reflect-101: ... 2 1 | 0 1 2 ... n-1 | n-2 n-3 ...
std::size_t reflect101(std::int64_t i, std::int64_t n) {
  if (n == 1) return 0;
  const std::int64_t period = 2 * n - 2;
  i %= period;
  if (i < 0) i += period;
  if (i >= n) i = period - i;
  return static_cast<std::size_t>(i);
}

std::vector<double> gaussian_kernel(double sigma) {
  const auto radius = static_cast<std::int64_t>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (std::int64_t x = -radius; x <= radius; ++x) {
    const double w = std::exp(-static_cast<double>(x * x) / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(x + radius)] = w;
    total += w;
  }
  for (double& w : k) w /= total;
  return k;
}

}  // namespace

void PreprocessConfig::validate() const {
  const auto require = [](bool ok, const char* message) {
    if (!ok) throw Error(ErrorCode::kInvalidConfig, message);
  };
  require(crop_threshold >= 0.0 && crop_threshold <= 1.0, "crop_threshold must lie in [0, 1]");
  require(target_side >= 16, "target_side must be at least 16");
  require(std::isfinite(graham_alpha) && std::isfinite(graham_beta), "graham weights must be finite");
  require(graham_gamma >= 0.0 && graham_gamma <= 1.0, "graham_gamma must lie in [0, 1]");
  require(resolved_graham_sigma() > 0.0, "graham_sigma must be positive");
  require(denoise_sigma >= 0.0, "denoise_sigma must be non-negative");
}

std::string preprocess_config_to_json(const PreprocessConfig& config) {
  nlohmann::ordered_json j;
  j["crop_threshold"] = config.crop_threshold;
  j["target_side"] = config.target_side;
  j["graham_alpha"] = config.graham_alpha;
  j["graham_beta"] = config.graham_beta;
  j["graham_gamma"] = config.graham_gamma;
  j["graham_sigma"] = config.resolved_graham_sigma();
  j["denoise_sigma"] = config.denoise_sigma;
  return j.dump(2);
}

PreprocessConfig preprocess_config_from_json(const std::string& text, PreprocessConfig base) {
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, "preprocess config must be a JSON object");
  }
  try {
    if (j.contains("crop_threshold")) base.crop_threshold = j["crop_threshold"].get<double>();
    if (j.contains("target_side")) base.target_side = j["target_side"].get<std::size_t>();
    if (j.contains("graham_alpha")) base.graham_alpha = j["graham_alpha"].get<double>();
    if (j.contains("graham_beta")) base.graham_beta = j["graham_beta"].get<double>();
    if (j.contains("graham_gamma")) base.graham_gamma = j["graham_gamma"].get<double>();
    if (j.contains("graham_sigma") && !j["graham_sigma"].is_null()) {
      base.graham_sigma = j["graham_sigma"].get<double>();
    }
    if (j.contains("denoise_sigma")) base.denoise_sigma = j["denoise_sigma"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("preprocess config: ") + e.what());
  }
  return base;
}

ImageGrid to_grayscale(const ImageGrid& rgb) {
  if (rgb.channels() != 3) {
    throw Error(ErrorCode::kChannelMismatch,
                "grayscale conversion needs 3 channels, got " + std::to_string(rgb.channels()));
  }
  ImageGrid out(rgb.width(), rgb.height());
  for (std::size_t r = 0; r < rgb.height(); ++r) {
    for (std::size_t c = 0; c < rgb.width(); ++c) {
      out.at(r, c) = std::clamp(luminance(rgb, r, c), 0.0, 1.0);
    }
  }
  return out;
}

ImageGrid crop_black_border(const ImageGrid& image, double threshold) {
  require_gray_or_rgb(image);
  std::size_t top = image.height(), bottom = 0, left = image.width(), right = 0;
  bool any = false;
  for (std::size_t r = 0; r < image.height(); ++r) {
    for (std::size_t c = 0; c < image.width(); ++c) {
      if (luminance(image, r, c) > threshold) {
        any = true;
        top = std::min(top, r);
        bottom = std::max(bottom, r);
        left = std::min(left, c);
        right = std::max(right, c);
      }
    }
  }
  if (!any) throw Error(ErrorCode::kEmptyRetina, "no pixel above the crop threshold");

  const std::size_t ch = image.channels();
  ImageGrid out(right - left + 1, bottom - top + 1, ch);
  for (std::size_t r = 0; r < out.height(); ++r) {
    for (std::size_t c = 0; c < out.width(); ++c) {
      for (std::size_t k = 0; k < ch; ++k) out.at(r, c, k) = image.at(top + r, left + c, k);
    }
  }
  return out;
}

ImageGrid resize_bilinear(const ImageGrid& image, std::size_t width, std::size_t height) {
  if (image.empty() || width == 0 || height == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "cannot resize an empty image");
  }
  const std::size_t ch = image.channels();
  const auto scale = [](std::size_t src, std::size_t dst) {
    return dst > 1 ? static_cast<double>(src - 1) / static_cast<double>(dst - 1) : 0.0;
  };
  const double sy = scale(image.height(), height);
  const double sx = scale(image.width(), width);

  ImageGrid out(width, height, ch);
  for (std::size_t r = 0; r < height; ++r) {
    const double y = static_cast<double>(r) * sy;
    const auto y0 = std::min(static_cast<std::size_t>(y), image.height() - 1);
    const std::size_t y1 = std::min(y0 + 1, image.height() - 1);
    const double ay = y - static_cast<double>(y0);
    for (std::size_t c = 0; c < width; ++c) {
      const double x = static_cast<double>(c) * sx;
      const auto x0 = std::min(static_cast<std::size_t>(x), image.width() - 1);
      const std::size_t x1 = std::min(x0 + 1, image.width() - 1);
      const double ax = x - static_cast<double>(x0);
      for (std::size_t k = 0; k < ch; ++k) {
        const double top = (1.0 - ax) * image.at(y0, x0, k) + ax * image.at(y0, x1, k);
        const double bot = (1.0 - ax) * image.at(y1, x0, k) + ax * image.at(y1, x1, k);
        out.at(r, c, k) = (1.0 - ay) * top + ay * bot;
      }
    }
  }
  return out;
}

ImageGrid gaussian_blur(const ImageGrid& image, double sigma) {
  if (sigma < 0.0 || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidConfig, "blur sigma must be finite and non-negative");
  }
  if (sigma == 0.0 || image.empty()) return image;

  const std::vector<double> kernel = gaussian_kernel(sigma);
  const auto radius = static_cast<std::int64_t>(kernel.size() / 2);
  const auto w = static_cast<std::int64_t>(image.width());
  const auto h = static_cast<std::int64_t>(image.height());
  const std::size_t ch = image.channels();

  ImageGrid horizontal(image.width(), image.height(), ch);
  for (std::int64_t r = 0; r < h; ++r) {
    for (std::int64_t c = 0; c < w; ++c) {
      for (std::size_t k = 0; k < ch; ++k) {
        double acc = 0.0;
        for (std::int64_t t = -radius; t <= radius; ++t) {
          acc += kernel[static_cast<std::size_t>(t + radius)] *
                 image.at(static_cast<std::size_t>(r), reflect101(c + t, w), k);
        }
        horizontal.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c), k) = acc;
      }
    }
  }
  ImageGrid out(image.width(), image.height(), ch);
  for (std::int64_t r = 0; r < h; ++r) {
    for (std::int64_t c = 0; c < w; ++c) {
      for (std::size_t k = 0; k < ch; ++k) {
        double acc = 0.0;
        for (std::int64_t t = -radius; t <= radius; ++t) {
          acc += kernel[static_cast<std::size_t>(t + radius)] *
                 horizontal.at(reflect101(r + t, h), static_cast<std::size_t>(c), k);
        }
        out.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c), k) = acc;
      }
    }
  }
  return out;
}

ImageGrid graham_normalize(const ImageGrid& image, const PreprocessConfig& config) {
  config.validate();
  const ImageGrid blurred = gaussian_blur(image, config.resolved_graham_sigma());
  ImageGrid out(image.width(), image.height(), image.channels());
  const auto src = image.pixels();
  const auto blur = blurred.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = std::clamp(
        config.graham_alpha * src[i] + config.graham_beta * blur[i] + config.graham_gamma, 0.0, 1.0);
  }
  return out;
}

ImageGrid preprocess_pipeline(const ImageGrid& image, const PreprocessConfig& config) {
  config.validate();
  require_gray_or_rgb(image);
  const ImageGrid cropped = crop_black_border(image, config.crop_threshold);
  const ImageGrid resized = resize_bilinear(cropped, config.target_side, config.target_side);
  const ImageGrid contrast = graham_normalize(resized, config);
  ImageGrid denoised = gaussian_blur(contrast, config.denoise_sigma);
  for (double& v : denoised.pixels()) v = std::clamp(v, 0.0, 1.0);
  if (denoised.channels() == 1) return denoised;
  return to_grayscale(denoised);
}

}  // namespace radex
