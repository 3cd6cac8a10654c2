#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library: curves are evaluated through the tanh form of the
// logistic, rounding goes through the C library, and transforms are
// computed per curve or per pixel without any batching.

#include <cfenv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace radex::oracle {

inline double curve_z(double p, double q, double c, double side) {
  return 0.5 * side * std::tanh(0.5 * c * (p - q)) + 0.5 * side;
}

inline std::int64_t curve_row(double p, double q, double c, std::int64_t side) {
  std::fesetround(FE_TONEAREST);
  const double z = std::nearbyint(curve_z(p, q, c, static_cast<double>(side)));
  if (z < 0.0) return 0;
  if (z > static_cast<double>(side - 1)) return side - 1;
  return static_cast<std::int64_t>(z);
}

// image is side*side row-major. Result is c-major: out[ci * qs.size() + qi].
inline std::vector<double> radex_sinogram(const std::vector<double>& image, std::int64_t side,
                                          const std::vector<double>& qs,
                                          const std::vector<double>& cs) {
  std::vector<double> out;
  for (double c : cs) {
    for (double q : qs) {
      double sum = 0.0;
      for (std::int64_t p = 0; p < side; ++p) {
        sum += image[static_cast<std::size_t>(curve_row(static_cast<double>(p), q, c, side) * side + p)];
      }
      out.push_back(sum);
    }
  }
  return out;
}

// Direct 2-D convolution with a normalised Gaussian of radius ceil(3 sigma)
// and reflect-101 borders, one channel.
inline std::vector<double> gaussian_blur(const std::vector<double>& image, std::int64_t width,
                                         std::int64_t height, double sigma) {
  const auto radius = static_cast<std::int64_t>(std::ceil(3.0 * sigma));
  const auto reflect = [](std::int64_t i, std::int64_t n) {
    if (n == 1) return std::int64_t{0};
    while (i < 0 || i >= n) i = i < 0 ? -i : 2 * (n - 1) - i;
    return i;
  };
  double norm = 0.0;
  for (std::int64_t dy = -radius; dy <= radius; ++dy) {
    for (std::int64_t dx = -radius; dx <= radius; ++dx) {
      norm += std::exp(-static_cast<double>(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
  }
  std::vector<double> out(image.size(), 0.0);
  for (std::int64_t r = 0; r < height; ++r) {
    for (std::int64_t c = 0; c < width; ++c) {
      double acc = 0.0;
      for (std::int64_t dy = -radius; dy <= radius; ++dy) {
        for (std::int64_t dx = -radius; dx <= radius; ++dx) {
          const double w =
              std::exp(-static_cast<double>(dx * dx + dy * dy) / (2.0 * sigma * sigma)) / norm;
          acc += w * image[static_cast<std::size_t>(reflect(r + dy, height) * width +
                                                    reflect(c + dx, width))];
        }
      }
      out[static_cast<std::size_t>(r * width + c)] = acc;
    }
  }
  return out;
}

// Linear Radon projection by rotating the image about its centre (inverse
// mapping, bilinear, zero outside) and summing each column of the rotated
// frame. Returns one projection per angle, indexed by integer offset
// -side/2 .. side/2 from the centre column.
inline std::vector<std::vector<double>> rotate_and_sum(const std::vector<double>& image,
                                                       std::int64_t side,
                                                       const std::vector<double>& angles_deg) {
  const double centre = (static_cast<double>(side) - 1.0) / 2.0;
  const std::int64_t half = side / 2;
  const auto pixel = [&](std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0 || x >= side || y >= side) return 0.0;
    return image[static_cast<std::size_t>(y * side + x)];
  };
  const auto bilinear = [&](double x, double y) {
    const double fx = std::floor(x), fy = std::floor(y);
    const double ax = x - fx, ay = y - fy;
    const auto x0 = static_cast<std::int64_t>(fx), y0 = static_cast<std::int64_t>(fy);
    return (1 - ay) * ((1 - ax) * pixel(x0, y0) + ax * pixel(x0 + 1, y0)) +
           ay * ((1 - ax) * pixel(x0, y0 + 1) + ax * pixel(x0 + 1, y0 + 1));
  };
  std::vector<std::vector<double>> projections;
  for (double deg : angles_deg) {
    const double t = deg * std::numbers::pi / 180.0;
    std::vector<double> proj(static_cast<std::size_t>(2 * half + 1), 0.0);
    // Rotated frame coordinates (u along the normal, v along the line) on a
    // grid wide enough to hold the whole image.
    for (std::int64_t u = -half; u <= half; ++u) {
      double sum = 0.0;
      for (std::int64_t v = -side; v <= side; ++v) {
        sum += bilinear(centre + static_cast<double>(u) * std::cos(t) - static_cast<double>(v) * std::sin(t),
                        centre + static_cast<double>(u) * std::sin(t) + static_cast<double>(v) * std::cos(t));
      }
      proj[static_cast<std::size_t>(u + half)] = sum;
    }
    projections.push_back(std::move(proj));
  }
  return projections;
}

}  // namespace radex::oracle
