#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "radex/image.hpp"
#include "radex/plan.hpp"

namespace radex {

/// Curve integrals of one image. values is row-major with one row per
/// curvature (plan c_values) and one column per shift (plan q_values).
struct Sinogram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::shared_ptr<const TransformPlan> plan;

  double at(std::size_t c_index, std::size_t q_index) const noexcept {
    return values[c_index * cols + q_index];
  }
};

/// Sums image[z(p)][p] over every column p for every planned curve. The result
/// is bitwise independent of the worker count (0 picks the hardware count).
/// Throws Error(kDimensionMismatch) unless the image is a single-channel
/// square of side plan.dims.m().
Sinogram radex_sinogram(const ImageGrid& image, std::shared_ptr<const TransformPlan> plan,
                        unsigned workers = 0);
Sinogram radex_sinogram(const ImageGrid& image, const TransformPlan& plan, unsigned workers = 0);

/// Min-max rescale to [0, 1] (all zeros when constant), resampled with nearest
/// neighbour onto an out_side x out_side grid.
ImageGrid normalize_matrix(std::size_t rows, std::size_t cols, const std::vector<double>& values,
                           std::size_t out_width, std::size_t out_height);

/// normalize_matrix onto the plan's m x m frame.
ImageGrid normalize_sinogram(const Sinogram& sinogram);

/// Classical straight-line Radon transform. Rows are signed detector offsets
/// from -max_offset to +max_offset, columns are angles k * 180 / angle_count
/// degrees.
struct LinearSinogram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<double> angles_deg;
  std::int64_t max_offset = 0;

  double at(std::size_t offset_index, std::size_t angle_index) const noexcept {
    return values[offset_index * cols + angle_index];
  }
};

inline constexpr std::size_t kDefaultAngleCount = 180;

/// Throws Error(kDimensionMismatch) on non-square input and
/// Error(kInvalidConfig) when angle_count is 0.
LinearSinogram radon_linear(const ImageGrid& image, std::size_t angle_count = kDefaultAngleCount,
                            unsigned workers = 0);

/// Bilinear sample with zero outside the raster. x is the column, y the row.
double sample_bilinear(const ImageGrid& image, double x, double y) noexcept;

}  // namespace radex
