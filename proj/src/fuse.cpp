#include "radex/fuse.hpp"

#include <algorithm>

#include "radex/error.hpp"

namespace radex {

FusedImage fuse(const ImageGrid& image, const ImageGrid& sinogram_render, std::string source_id,
                std::string plan_id) {
  if (!image.is_square() || image.empty() || image.width() != sinogram_render.width() ||
      image.height() != sinogram_render.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "fusion needs two squares of equal side, got " + std::to_string(image.width()) +
                    "x" + std::to_string(image.height()) + " and " +
                    std::to_string(sinogram_render.width()) + "x" +
                    std::to_string(sinogram_render.height()));
  }
  if (image.channels() != 1 || sinogram_render.channels() != 1) {
    throw Error(ErrorCode::kChannelMismatch, "fusion expects single-channel inputs");
  }

  const std::size_t m = image.width();
  FusedImage fused{ImageGrid(2 * m, m), std::move(source_id), std::move(plan_id)};
  const auto left = image.pixels();
  const auto right = sinogram_render.pixels();
  auto out = fused.grid.pixels();
  for (std::size_t r = 0; r < m; ++r) {
    std::copy_n(left.begin() + static_cast<std::ptrdiff_t>(r * m), m,
                out.begin() + static_cast<std::ptrdiff_t>(2 * r * m));
    std::copy_n(right.begin() + static_cast<std::ptrdiff_t>(r * m), m,
                out.begin() + static_cast<std::ptrdiff_t>(2 * r * m + m));
  }
  return fused;
}

}  // namespace radex
