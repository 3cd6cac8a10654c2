#include "radex/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "radex/error.hpp"
#include "radex/parallel.hpp"

namespace radex {
namespace {

void require_single_channel(const ImageGrid& image) {
  if (image.channels() != 1) {
    throw Error(ErrorCode::kChannelMismatch,
                "transform expects a single-channel image, got " +
                    std::to_string(image.channels()) + " channels");
  }
}

}  // namespace

Sinogram radex_sinogram(const ImageGrid& image, const TransformPlan& plan, unsigned workers) {
  return radex_sinogram(image, std::make_shared<const TransformPlan>(plan), workers);
}

Sinogram radex_sinogram(const ImageGrid& image, std::shared_ptr<const TransformPlan> plan,
                        unsigned workers) {
  const auto m = static_cast<std::size_t>(plan->dims.m());
  if (image.width() != m || image.height() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image is " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()) + " but the plan expects " +
                    std::to_string(m) + "x" + std::to_string(m));
  }
  require_single_channel(image);

  Sinogram out;
  out.rows = plan->c_values.size();
  out.cols = plan->q_values.size();
  out.values.assign(out.rows * out.cols, 0.0);

  const std::span<const double> px = image.pixels();
  parallel_for(out.values.size(), workers, [&](std::size_t begin, std::size_t end) {
    std::vector<std::int32_t> rows(m);
    for (std::size_t curve = begin; curve < end; ++curve) {
      const CurveParams params{plan->q_values[curve % out.cols], plan->c_values[curve / out.cols]};
      trace_curve_into(params, plan->dims, rows.data());
      double sum = 0.0;
      for (std::size_t p = 0; p < m; ++p) {
        sum += px[static_cast<std::size_t>(rows[p]) * m + p];
      }
      out.values[curve] = sum;
    }
  });
  out.plan = std::move(plan);
  return out;
}

ImageGrid normalize_matrix(std::size_t rows, std::size_t cols, const std::vector<double>& values,
                           std::size_t out_width, std::size_t out_height) {
  if (rows == 0 || cols == 0 || values.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix shape does not match its values");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;

  ImageGrid out(out_width, out_height);
  if (!(span > 0.0)) return out;
  for (std::size_t r = 0; r < out_height; ++r) {
    const std::size_t src_r = std::min(rows - 1, (2 * r + 1) * rows / (2 * out_height));
    for (std::size_t c = 0; c < out_width; ++c) {
      const std::size_t src_c = std::min(cols - 1, (2 * c + 1) * cols / (2 * out_width));
      out.at(r, c) = std::clamp((values[src_r * cols + src_c] - lo) / span, 0.0, 1.0);
    }
  }
  return out;
}

ImageGrid normalize_sinogram(const Sinogram& sinogram) {
  const auto m = static_cast<std::size_t>(sinogram.plan->dims.m());
  return normalize_matrix(sinogram.rows, sinogram.cols, sinogram.values, m, m);
}

double sample_bilinear(const ImageGrid& image, double x, double y) noexcept {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double ax = x - fx;
  const double ay = y - fy;
  const auto w = static_cast<std::int64_t>(image.width());
  const auto h = static_cast<std::int64_t>(image.height());
  const auto x0 = static_cast<std::int64_t>(fx);
  const auto y0 = static_cast<std::int64_t>(fy);
  const auto pixel = [&](std::int64_t col, std::int64_t row) {
    if (col < 0 || row < 0 || col >= w || row >= h) return 0.0;
    return image.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
  };
  return (1.0 - ay) * ((1.0 - ax) * pixel(x0, y0) + ax * pixel(x0 + 1, y0)) +
         ay * ((1.0 - ax) * pixel(x0, y0 + 1) + ax * pixel(x0 + 1, y0 + 1));
}

LinearSinogram radon_linear(const ImageGrid& image, std::size_t angle_count, unsigned workers) {
  if (!image.is_square() || image.empty()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "linear Radon transform expects a square image, got " +
                    std::to_string(image.width()) + "x" + std::to_string(image.height()));
  }
  require_single_channel(image);
  if (angle_count == 0) throw Error(ErrorCode::kInvalidConfig, "angle_count must be positive");

  const double side = static_cast<double>(image.width());
  const double centre = (side - 1.0) / 2.0;
  const double radius = side / 2.0;

  LinearSinogram out;
  out.max_offset = static_cast<std::int64_t>(std::floor(radius));
  out.rows = static_cast<std::size_t>(2 * out.max_offset + 1);
  out.cols = angle_count;
  out.values.assign(out.rows * out.cols, 0.0);
  out.angles_deg.resize(angle_count);
  for (std::size_t k = 0; k < angle_count; ++k) {
    out.angles_deg[k] = 180.0 * static_cast<double>(k) / static_cast<double>(angle_count);
  }

  parallel_for(angle_count, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double theta = out.angles_deg[k] * std::numbers::pi / 180.0;
      const double cos_t = std::cos(theta);
      const double sin_t = std::sin(theta);
      for (std::int64_t d = -out.max_offset; d <= out.max_offset; ++d) {
        const double dd = static_cast<double>(d);
        const double half_chord = std::sqrt(std::max(0.0, radius * radius - dd * dd));
        const auto t_max = static_cast<std::int64_t>(std::floor(half_chord));
        double sum = 0.0;
        for (std::int64_t t = -t_max; t <= t_max; ++t) {
          const double tt = static_cast<double>(t);
          sum += sample_bilinear(image, centre + dd * cos_t - tt * sin_t,
                                 centre + dd * sin_t + tt * cos_t);
        }
        out.values[static_cast<std::size_t>(d + out.max_offset) * out.cols + k] = sum;
      }
    }
  });
  return out;
}

}  // namespace radex
