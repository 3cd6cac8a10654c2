#include "radex/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>

#include "radex/engine.hpp"
#include "radex/error.hpp"
#include "radex/plan.hpp"

#ifndef RADEX_BUILD_FLAGS
#define RADEX_BUILD_FLAGS "unknown"
#endif

namespace radex {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

ImageGrid bench_fixture(std::size_t side) {
  ImageGrid image(side, side);
  const double s = static_cast<double>(side);
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      const double x = static_cast<double>(c) / s;
      const double y = static_cast<double>(r) / s;
      image.at(r, c) = 0.5 + 0.25 * std::sin(12.0 * x + 3.0 * y) + 0.25 * std::cos(7.0 * x * y);
    }
  }
  return image;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kInvalidConfig, "slope fit needs at least two paired samples");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BenchReport run_scaling_bench(std::vector<std::int64_t> sizes, std::size_t repetitions,
                              unsigned workers) {
  if (sizes.size() < 2) throw Error(ErrorCode::kInvalidConfig, "bench needs at least two sizes");
  if (repetitions < 3) throw Error(ErrorCode::kInvalidConfig, "bench needs at least 3 repetitions");
  for (auto m : sizes) {
    if (m < 32) throw Error(ErrorCode::kInvalidConfig, "bench sizes must be at least 32");
  }
  std::sort(sizes.begin(), sizes.end());

  BenchReport report;
  report.workers = workers;
  report.repetitions = repetitions;
  report.build_flags = RADEX_BUILD_FLAGS;

  std::vector<double> xs, ys;
  for (const std::int64_t m : sizes) {
    PlanConfig config;
    config.size = m;
    const ImageGrid image = bench_fixture(static_cast<std::size_t>(m));

    std::vector<double> plan_times, transform_times;
    std::shared_ptr<const TransformPlan> plan;
    for (std::size_t rep = 0; rep <= repetitions; ++rep) {
      auto start = Clock::now();
      plan = std::make_shared<const TransformPlan>(build_plan(config));
      const double plan_ms = elapsed_ms(start);

      start = Clock::now();
      const Sinogram s = radex_sinogram(image, plan, workers);
      const double transform_ms = elapsed_ms(start);
      if (s.values.empty()) throw Error(ErrorCode::kEmptyHarvest, "empty sinogram");

      if (rep == 0) continue;  // warm-up
      plan_times.push_back(plan_ms);
      transform_times.push_back(transform_ms);
    }

    BenchRow row;
    row.size = m;
    row.curve_count = plan->curve_count();
    row.plan_ms = median(plan_times);
    row.transform_ms = median(transform_times);
    row.pixels_per_second =
        static_cast<double>(m * m) / (std::max(row.transform_ms, 1e-9) / 1000.0);
    report.rows.push_back(row);
    xs.push_back(static_cast<double>(m));
    ys.push_back(std::max(row.transform_ms, 1e-9));
  }
  report.exponent = fit_loglog_slope(xs, ys);
  return report;
}

std::string bench_report_to_json(const BenchReport& report) {
  nlohmann::ordered_json j;
  j["workers"] = report.workers;
  j["repetitions"] = report.repetitions;
  j["build_flags"] = report.build_flags;
  j["exponent"] = report.exponent;
  auto rows = nlohmann::ordered_json::array();
  for (const BenchRow& r : report.rows) {
    nlohmann::ordered_json row;
    row["M"] = r.size;
    row["curve_count"] = r.curve_count;
    row["plan_ms"] = r.plan_ms;
    row["transform_ms"] = r.transform_ms;
    row["pixels_per_second"] = r.pixels_per_second;
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

void print_bench_table(std::ostream& out, const BenchReport& report) {
  const auto flags = out.flags();
  out << std::setw(6) << "M" << std::setw(10) << "curves" << std::setw(12) << "plan_ms"
      << std::setw(14) << "transform_ms" << std::setw(14) << "Mpx/s" << '\n';
  out << std::fixed;
  for (const BenchRow& r : report.rows) {
    out << std::setw(6) << r.size << std::setw(10) << r.curve_count << std::setw(12)
        << std::setprecision(3) << r.plan_ms << std::setw(14) << r.transform_ms << std::setw(14)
        << std::setprecision(2) << r.pixels_per_second / 1e6 << '\n';
  }
  out << "fitted exponent (log T vs log M): " << std::setprecision(3) << report.exponent
      << "  workers=" << report.workers << " repetitions=" << report.repetitions << '\n';
  out.flags(flags);
}

}  // namespace radex
