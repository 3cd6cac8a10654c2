#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "radex/image.hpp"

namespace radex::testing_fixtures {

inline ImageGrid random_image(std::size_t side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ImageGrid image(side, side);
  for (double& v : image.pixels()) v = u(rng);
  return image;
}

inline ImageGrid centered_disk(std::size_t side, double radius, double value = 1.0) {
  ImageGrid image(side, side);
  const double centre = (static_cast<double>(side) - 1.0) / 2.0;
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      const double dy = static_cast<double>(r) - centre;
      const double dx = static_cast<double>(c) - centre;
      if (dx * dx + dy * dy <= radius * radius) image.at(r, c) = value;
    }
  }
  return image;
}

/// Colour "fundus": an orange-red disk with a darker vessel-like band and a
/// bright spot, on a black background. Width and height may differ.
inline ImageGrid fundus_like(std::size_t width, std::size_t height) {
  ImageGrid image(width, height, 3);
  const double cx = (static_cast<double>(width) - 1.0) / 2.0;
  const double cy = (static_cast<double>(height) - 1.0) / 2.0;
  const double radius = 0.42 * static_cast<double>(std::min(width, height));
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const double dx = static_cast<double>(c) - cx;
      const double dy = static_cast<double>(r) - cy;
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d > radius) continue;
      const double shade = 0.55 + 0.35 * (1.0 - d / radius);
      const double vessel = std::abs(dy - 0.3 * dx) < 0.03 * radius ? 0.5 : 1.0;
      const double spot = std::hypot(dx - 0.3 * radius, dy + 0.2 * radius) < 0.08 * radius ? 1.4 : 1.0;
      image.at(r, c, 0) = std::min(1.0, 0.85 * shade * vessel * spot);
      image.at(r, c, 1) = std::min(1.0, 0.45 * shade * vessel * spot);
      image.at(r, c, 2) = std::min(1.0, 0.20 * shade * vessel * spot);
    }
  }
  return image;
}

}  // namespace radex::testing_fixtures
