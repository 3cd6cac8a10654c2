#include "radex/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radex/error.hpp"

namespace radex {

ImageGrid::ImageGrid(std::size_t width, std::size_t height, std::size_t channels, double fill)
    : width_(width), height_(height), channels_(channels),
      pixels_(width * height * channels, fill) {}

ImageGrid::ImageGrid(std::size_t width, std::size_t height, std::size_t channels,
                     std::vector<double> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  if (pixels_.size() != width * height * channels) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pixel buffer holds " + std::to_string(pixels_.size()) + " values, expected " +
                    std::to_string(width * height * channels));
  }
}

bool in_unit_range(const ImageGrid& image) noexcept {
  const auto px = image.pixels();
  return std::all_of(px.begin(), px.end(),
                     [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; });
}

}  // namespace radex
