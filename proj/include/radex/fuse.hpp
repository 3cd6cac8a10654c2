#pragma once

#include <string>

#include "radex/image.hpp"

namespace radex {

/// Early-fusion composite: the image on the left, its sinogram rendering on
/// the right. Width is always twice the height.
struct FusedImage {
  ImageGrid grid;
  std::string source_id;
  std::string plan_id;
};

/// Throws Error(kDimensionMismatch) unless both inputs are single-channel
/// squares of the same side.
FusedImage fuse(const ImageGrid& image, const ImageGrid& sinogram_render,
                std::string source_id = {}, std::string plan_id = {});

}  // namespace radex
