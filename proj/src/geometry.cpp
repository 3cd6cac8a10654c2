#include "radex/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radex/error.hpp"

namespace radex {

ImageDims::ImageDims(std::int64_t m) : m_(m) {
  if (m < 2) {
    throw Error(ErrorCode::kInvalidConfig,
                "image side must be at least 2, got " + std::to_string(m));
  }
}

double compute_z(double p, const CurveParams& params, const ImageDims& dims) noexcept {
  const double side = dims.side();
  const double arg = params.c * (p - params.q);
  if (arg > kSaturationArgument) return side;
  if (arg < -kSaturationArgument) return 0.0;
  // Evaluate with the exponential of a non-positive argument on both branches
  // so neither side overflows and the small tail keeps its relative precision.
  if (arg >= 0.0) return side / (1.0 + std::exp(-arg));
  const double e = std::exp(arg);
  return side * e / (1.0 + e);
}

double compute_c(double z, double p, double q, const ImageDims& dims) {
  if (p == q) {
    throw Error(ErrorCode::kDegenerateInverse,
                "curvature is undetermined at the anchor column p == q");
  }
  const double side = dims.side();
  if (!(z > 0.0 && z < side)) {
    throw Error(ErrorCode::kOutOfRange,
                "inverse needs 0 < z < M, got z = " + std::to_string(z));
  }
  return std::log(z / (side - z)) / (p - q);
}

double round_half_even(double x) noexcept {
  const double lower = std::floor(x);
  const double diff = x - lower;
  if (diff < 0.5) return lower;
  if (diff > 0.5) return lower + 1.0;
  return std::fmod(lower, 2.0) == 0.0 ? lower : lower + 1.0;
}

std::int32_t trace_row(double p, const CurveParams& params, const ImageDims& dims) noexcept {
  const double z = round_half_even(compute_z(p, params, dims));
  const double top = dims.side() - 1.0;
  return static_cast<std::int32_t>(std::clamp(z, 0.0, top));
}

void trace_curve_into(const CurveParams& params, const ImageDims& dims,
                      std::int32_t* out) noexcept {
  const std::int64_t m = dims.m();
  for (std::int64_t p = 0; p < m; ++p) {
    out[p] = trace_row(static_cast<double>(p), params, dims);
  }
}

CurveTrace trace_curve(const CurveParams& params, const ImageDims& dims) {
  CurveTrace trace{params, std::vector<std::int32_t>(static_cast<std::size_t>(dims.m()))};
  trace_curve_into(params, dims, trace.z_values.data());
  return trace;
}

}  // namespace radex
