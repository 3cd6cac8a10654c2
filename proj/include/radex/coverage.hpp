#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "radex/image.hpp"
#include "radex/plan.hpp"

namespace radex {

/// Pixels touched by at least one planned curve, exactly as the engine
/// samples them.
struct CoverageMap {
  ImageDims dims{2};
  std::vector<std::uint8_t> visited;  // m*m, row-major, 0 or 1
  std::size_t covered = 0;
  double fraction = 0.0;

  bool is_visited(std::size_t row, std::size_t col) const noexcept {
    return visited[row * static_cast<std::size_t>(dims.m()) + col] != 0;
  }
};

CoverageMap coverage_of(const TransformPlan& plan, unsigned workers = 0);

/// White (1.0) where covered, black elsewhere.
ImageGrid coverage_image(const CoverageMap& coverage);

struct SweepRow {
  PlanConfig config;
  double delta_q = 0.0;
  std::size_t curve_count = 0;
  double fraction = 0.0;
  double wall_ms = 0.0;
  std::optional<std::string> error;  // set when this config failed
};

/// Builds and rasterises every config independently; per-config failures are
/// recorded on the row and do not stop the sweep.
std::vector<SweepRow> coverage_sweep(const std::vector<PlanConfig>& configs, unsigned workers = 0);

/// Header: M,m_divisions,special_c_count,c_low,c_high,c_step,curve_count,fraction,wall_ms.
/// Failed rows leave curve_count and fraction empty.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Parses a sweep document: either a JSON array of config objects or an
/// object {"base": {...}, "configs": [...]} whose entries overlay base.
std::vector<PlanConfig> sweep_configs_from_json(const std::string& text);

}  // namespace radex
