#pragma once

// Curve geometry of the RadEx transform.
//
// A curve is the logistic
//
//     z(p) = M / (1 + exp(-c * (p - q)))  ==  (M/2) * tanh(c * (p - q) / 2) + M/2
//
// over a square M x M frame: p is the column, z the row, q shifts the curve
// horizontally and c sets its steepness. The inverse is
//
//     c = ln(z / (M - z)) / (p - q)

#include <cstdint>
#include <vector>

namespace radex {

/// Side length of the square working frame.
class ImageDims {
 public:
  /// Throws Error(kInvalidConfig) when m < 2.
  explicit ImageDims(std::int64_t m);

  std::int64_t m() const noexcept { return m_; }
  double side() const noexcept { return static_cast<double>(m_); }

  friend bool operator==(const ImageDims&, const ImageDims&) = default;

 private:
  std::int64_t m_;
};

struct CurveParams {
  double q = 0.0;  // horizontal shift, pixels
  double c = 0.0;  // curvature rate, 1/pixels
};

/// One clamped row index per integer column of the frame.
struct CurveTrace {
  CurveParams params;
  std::vector<std::int32_t> z_values;
};

/// Logistic arguments whose magnitude exceeds this return the asymptote.
inline constexpr double kSaturationArgument = 700.0;

double compute_z(double p, const CurveParams& params, const ImageDims& dims) noexcept;

/// Inverse of compute_z in c. Throws Error(kDegenerateInverse) when p == q and
/// Error(kOutOfRange) unless 0 < z < M.
double compute_c(double z, double p, double q, const ImageDims& dims);

/// Round to nearest, ties to even, independent of the floating-point
/// environment's rounding mode.
double round_half_even(double x) noexcept;

/// Row index that column \p p of the curve lands on.
std::int32_t trace_row(double p, const CurveParams& params, const ImageDims& dims) noexcept;

CurveTrace trace_curve(const CurveParams& params, const ImageDims& dims);

// Writes the m row indices into out (out.size() must equal m).
void trace_curve_into(const CurveParams& params, const ImageDims& dims,
                      std::int32_t* out) noexcept;

}  // namespace radex
