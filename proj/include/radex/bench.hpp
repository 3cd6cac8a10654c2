#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "radex/image.hpp"

namespace radex {

struct BenchRow {
  std::int64_t size = 0;
  std::size_t curve_count = 0;
  double plan_ms = 0.0;       // median
  double transform_ms = 0.0;  // median
  double pixels_per_second = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // sorted by size
  unsigned workers = 1;
  std::size_t repetitions = 0;
  std::string build_flags;
  /// Least-squares slope of log(transform_ms) against log(M).
  double exponent = 0.0;
};

/// Deterministic smooth test pattern in [0, 1], used as the bench input.
ImageGrid bench_fixture(std::size_t side);

/// Times default-plan construction and the sinogram transform for each size.
/// A warm-up run is discarded, then the median of `repetitions` timings is
/// kept. Requires at least two sizes, each >= 32, and repetitions >= 3.
BenchReport run_scaling_bench(std::vector<std::int64_t> sizes, std::size_t repetitions,
                              unsigned workers = 1);

/// Slope of the least-squares line through (log x, log y).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string bench_report_to_json(const BenchReport& report);
void print_bench_table(std::ostream& out, const BenchReport& report);

}  // namespace radex
