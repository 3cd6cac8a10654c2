#include "radex/coverage.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <nlohmann/json.hpp>

#include "radex/error.hpp"
#include "radex/parallel.hpp"

namespace radex {

CoverageMap coverage_of(const TransformPlan& plan, unsigned workers) {
  const auto m = static_cast<std::size_t>(plan.dims.m());
  const std::size_t curves = plan.curve_count();
  const std::size_t cols = plan.q_values.size();

  if (workers == 0) workers = default_workers();
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, curves));
  std::vector<std::vector<std::uint8_t>> partial(chunks);

  // One private bitmap per chunk, OR-merged afterwards.
  parallel_for(chunks, static_cast<unsigned>(chunks), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      auto& bits = partial[k];
      bits.assign(m * m, 0);
      std::vector<std::int32_t> rows(m);
      for (std::size_t curve = curves * k / chunks; curve < curves * (k + 1) / chunks; ++curve) {
        const CurveParams params{plan.q_values[curve % cols], plan.c_values[curve / cols]};
        trace_curve_into(params, plan.dims, rows.data());
        for (std::size_t p = 0; p < m; ++p) bits[static_cast<std::size_t>(rows[p]) * m + p] = 1;
      }
    }
  });

  CoverageMap map;
  map.dims = plan.dims;
  map.visited.assign(m * m, 0);
  for (const auto& bits : partial) {
    for (std::size_t i = 0; i < bits.size(); ++i) map.visited[i] |= bits[i];
  }
  map.covered = static_cast<std::size_t>(std::count(map.visited.begin(), map.visited.end(), 1));
  map.fraction = static_cast<double>(map.covered) / static_cast<double>(m * m);
  return map;
}

ImageGrid coverage_image(const CoverageMap& coverage) {
  const auto m = static_cast<std::size_t>(coverage.dims.m());
  ImageGrid out(m, m);
  for (std::size_t i = 0; i < m * m; ++i) out.pixels()[i] = coverage.visited[i] ? 1.0 : 0.0;
  return out;
}

std::vector<SweepRow> coverage_sweep(const std::vector<PlanConfig>& configs, unsigned workers) {
  if (configs.empty()) throw Error(ErrorCode::kInvalidConfig, "coverage sweep needs a config");
  std::vector<SweepRow> rows;
  rows.reserve(configs.size());
  for (const PlanConfig& config : configs) {
    SweepRow row;
    row.config = config;
    const auto start = std::chrono::steady_clock::now();
    try {
      config.validate();
      row.delta_q = config.delta_q();
      const TransformPlan plan = build_plan(config);
      row.curve_count = plan.curve_count();
      row.fraction = coverage_of(plan, workers).fraction;
    } catch (const Error& e) {
      row.error = std::string(to_string(e.code())) + ": " + e.what();
    }
    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "M,m_divisions,special_c_count,c_low,c_high,c_step,curve_count,fraction,wall_ms\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  for (const SweepRow& r : rows) {
    out << std::setprecision(17) << r.config.size << ',' << r.config.m_divisions << ','
        << r.config.resolved_special_c_count() << ',' << r.config.c_range_low << ','
        << r.config.c_range_high << ',' << r.config.c_range_step << ',';
    if (r.error) {
      out << ",,";
    } else {
      out << r.curve_count << ',' << r.fraction << ',';
    }
    out << std::fixed << std::setprecision(3) << r.wall_ms << '\n';
    out.flags(flags);
  }
  out.precision(precision);
}

std::vector<PlanConfig> sweep_configs_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::kInvalidConfig, "sweep file is not valid JSON");

  PlanConfig base;
  nlohmann::json entries;
  if (doc.is_array()) {
    entries = doc;
  } else if (doc.is_object() && doc.contains("configs") && doc["configs"].is_array()) {
    if (doc.contains("base")) base = config_from_json(doc["base"].dump(), base);
    entries = doc["configs"];
  } else {
    throw Error(ErrorCode::kInvalidConfig, "sweep file must be an array or hold a configs array");
  }
  std::vector<PlanConfig> configs;
  for (const auto& entry : entries) configs.push_back(config_from_json(entry.dump(), base));
  if (configs.empty()) throw Error(ErrorCode::kInvalidConfig, "sweep file lists no configs");
  return configs;
}

}  // namespace radex
