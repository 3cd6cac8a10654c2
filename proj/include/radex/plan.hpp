#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radex/geometry.hpp"

namespace radex {

inline constexpr const char* kPlanFormat = "radex-plan/1";
inline constexpr double kDedupTolerance = 1e-12;

struct PlanConfig {
  std::int64_t size = 512;          // frame side M
  std::int64_t m_divisions = 50;    // q step is M / m_divisions
  std::optional<std::int64_t> special_c_count;  // defaults to floor(M / 2)
  double c_range_low = -1.0;
  double c_range_high = 1.0;
  double c_range_step = 0.1;

  std::int64_t resolved_special_c_count() const noexcept {
    return special_c_count.value_or(size / 2);
  }
  double delta_q() const noexcept {
    return static_cast<double>(size) / static_cast<double>(m_divisions);
  }

  /// Throws Error(kInvalidConfig) describing the first violated constraint.
  void validate() const;
};

/// Counts recorded while the curvature list was assembled.
struct PlanProvenance {
  std::size_t harvest_size = 0;
  std::size_t neg_count = 0;
  std::size_t chosen_count = 0;  // distinct special values kept
  std::size_t pos_count = 0;
  bool midline_added = false;  // c = 0 missing from the selection
};

struct TransformPlan {
  ImageDims dims{2};
  std::vector<double> q_values;
  std::vector<double> c_values;
  PlanConfig config;
  PlanProvenance provenance;

  std::size_t curve_count() const noexcept { return q_values.size() * c_values.size(); }
};

std::vector<double> build_q_values(const PlanConfig& config);

/// Inverts the curve equation at the centre column for every planned q and
/// every row from M/2 to M-1, so that the harvested curvatures route a curve
/// through each of those rows. Returns the values sorted ascending.
std::vector<double> harvest_special_c(const PlanConfig& config);

/// Picks `count` elements of a sorted list at evenly spaced indices.
std::vector<double> select_evenly(std::span<const double> sorted, std::int64_t count);

/// Sorted, de-duplicated union of the boundary ranges and the chosen special
/// values. Throws Error(kEmptyHarvest) when \p harvest is empty.
std::vector<double> assemble_c_values(std::span<const double> harvest, const PlanConfig& config,
                                      PlanProvenance* provenance = nullptr);

TransformPlan build_plan(const PlanConfig& config);

/// A plan holding exactly the given grids; used for hand-built toy plans.
TransformPlan make_plan(const ImageDims& dims, std::vector<double> q_values,
                        std::vector<double> c_values);

std::string plan_to_json(const TransformPlan& plan);

/// Throws Error(kFormat) on malformed documents or violated plan invariants.
TransformPlan plan_from_json(const std::string& text);

std::string config_to_json(const PlanConfig& config);

/// Overlays the keys present in a config document onto \p base.
PlanConfig config_from_json(const std::string& text, PlanConfig base = {});

}  // namespace radex
