#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace radex {

/// Row-major raster of intensities in [0, 1]. Multi-channel grids interleave
/// channels per pixel (RGB order for colour images).
class ImageGrid {
 public:
  ImageGrid() = default;
  ImageGrid(std::size_t width, std::size_t height, std::size_t channels = 1, double fill = 0.0);
  /// Throws Error(kDimensionMismatch) if pixels.size() != width*height*channels.
  ImageGrid(std::size_t width, std::size_t height, std::size_t channels,
            std::vector<double> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t channels() const noexcept { return channels_; }
  bool empty() const noexcept { return pixels_.empty(); }
  bool is_square() const noexcept { return width_ == height_; }

  double& at(std::size_t row, std::size_t col, std::size_t channel = 0) noexcept {
    return pixels_[(row * width_ + col) * channels_ + channel];
  }
  double at(std::size_t row, std::size_t col, std::size_t channel = 0) const noexcept {
    return pixels_[(row * width_ + col) * channels_ + channel];
  }

  std::span<double> pixels() noexcept { return pixels_; }
  std::span<const double> pixels() const noexcept { return pixels_; }

  friend bool operator==(const ImageGrid&, const ImageGrid&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::size_t channels_ = 1;
  std::vector<double> pixels_;
};

/// True when every value is finite and inside [0, 1].
bool in_unit_range(const ImageGrid& image) noexcept;

}  // namespace radex
