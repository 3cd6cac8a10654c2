#include "radex/plan.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "radex/error.hpp"

namespace radex {
namespace {

using OrderedJson = nlohmann::ordered_json;

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidConfig, message);
}

void require_format(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kFormat, "plan document: " + message);
}

// Appends `value` if it is more than kDedupTolerance above the last kept entry.
void push_distinct(std::vector<double>& out, double value) {
  if (out.empty() || value - out.back() > kDedupTolerance) out.push_back(value);
}

OrderedJson config_json(const PlanConfig& config) {
  OrderedJson j;
  j["size"] = config.size;
  j["m_divisions"] = config.m_divisions;
  j["special_c_count"] = config.resolved_special_c_count();
  j["c_range_low"] = config.c_range_low;
  j["c_range_high"] = config.c_range_high;
  j["c_range_step"] = config.c_range_step;
  return j;
}

PlanConfig overlay_config(const nlohmann::json& j, PlanConfig base) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "plan config must be a JSON object");
  try {
    if (j.contains("size")) base.size = j.at("size").get<std::int64_t>();
    if (j.contains("m_divisions")) base.m_divisions = j.at("m_divisions").get<std::int64_t>();
    if (j.contains("special_c_count") && !j.at("special_c_count").is_null()) {
      base.special_c_count = j.at("special_c_count").get<std::int64_t>();
    }
    if (j.contains("c_range_low")) base.c_range_low = j.at("c_range_low").get<double>();
    if (j.contains("c_range_high")) base.c_range_high = j.at("c_range_high").get<double>();
    if (j.contains("c_range_step")) base.c_range_step = j.at("c_range_step").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("plan config: ") + e.what());
  }
  return base;
}

}  // namespace

void PlanConfig::validate() const {
  require(size >= 2, "size must be at least 2");
  require(m_divisions >= 1, "m_divisions must be positive");
  require(resolved_special_c_count() >= 1, "special_c_count must be positive");
  require(std::isfinite(c_range_low) && std::isfinite(c_range_high),
          "c range bounds must be finite");
  require(c_range_low < c_range_high, "c_range_low must be below c_range_high");
  require(std::isfinite(c_range_step) && c_range_step > 0.0, "c_range_step must be positive");
}

std::vector<double> build_q_values(const PlanConfig& config) {
  config.validate();
  const auto side = static_cast<double>(config.size);
  const auto divisions = static_cast<double>(config.m_divisions);
  std::vector<double> q(static_cast<std::size_t>(config.m_divisions + 1));
  // i * M / m rather than an accumulated step, so q_m is exactly M.
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = static_cast<double>(i) * side / divisions;
  return q;
}

std::vector<double> harvest_special_c(const PlanConfig& config) {
  const ImageDims dims(config.size);
  const std::vector<double> q_values = build_q_values(config);
  const double anchor = dims.side() / 2.0;
  const std::int64_t z_first = (dims.m() + 1) / 2;  // ceil(M / 2)

  std::vector<double> harvest;
  harvest.reserve(q_values.size() * static_cast<std::size_t>(dims.m() - z_first));
  for (double q : q_values) {
    if (std::abs(anchor - q) < kDedupTolerance) continue;
    for (std::int64_t z = z_first; z < dims.m(); ++z) {
      // + 0.0 folds -0.0 into +0.0 so the sort order is fully determined.
      harvest.push_back(compute_c(static_cast<double>(z), anchor, q, dims) + 0.0);
    }
  }
  std::sort(harvest.begin(), harvest.end());
  return harvest;
}

std::vector<double> select_evenly(std::span<const double> sorted, std::int64_t count) {
  if (count < 1) throw Error(ErrorCode::kInvalidConfig, "selection count must be positive");
  std::vector<double> chosen;
  if (sorted.empty()) return chosen;
  const auto last = static_cast<std::int64_t>(sorted.size()) - 1;
  if (count == 1) {
    chosen.push_back(sorted[static_cast<std::size_t>(last / 2)]);
    return chosen;
  }
  chosen.reserve(static_cast<std::size_t>(count));
  const std::int64_t denom = count - 1;
  for (std::int64_t k = 0; k < count; ++k) {
    // round(k * last / denom), ties upward, computed exactly in integers.
    const std::int64_t index = (2 * k * last + denom) / (2 * denom);
    chosen.push_back(sorted[static_cast<std::size_t>(index)]);
  }
  return chosen;
}

std::vector<double> assemble_c_values(std::span<const double> harvest, const PlanConfig& config,
                                      PlanProvenance* provenance) {
  config.validate();
  if (harvest.empty()) {
    throw Error(ErrorCode::kEmptyHarvest, "special curvature harvest is empty");
  }
  const double lowest = harvest.front();
  const double highest = harvest.back();
  const double step = config.c_range_step;

  std::vector<double> neg;
  for (std::int64_t k = 0;; ++k) {
    const double v = config.c_range_low + static_cast<double>(k) * step;
    if (!(v < lowest - kDedupTolerance)) break;
    neg.push_back(v);
  }
  std::vector<double> pos;
  for (std::int64_t k = 1;; ++k) {
    const double v = highest + static_cast<double>(k) * step;
    if (v > config.c_range_high + kDedupTolerance) break;
    pos.push_back(v);
  }
  const std::vector<double> chosen = select_evenly(harvest, config.resolved_special_c_count());

  std::vector<double> all;
  all.reserve(neg.size() + chosen.size() + pos.size());
  all.insert(all.end(), neg.begin(), neg.end());
  all.insert(all.end(), chosen.begin(), chosen.end());
  all.insert(all.end(), pos.begin(), pos.end());
  std::sort(all.begin(), all.end());

  std::vector<double> distinct;
  distinct.reserve(all.size());
  for (double v : all) push_distinct(distinct, v);

  if (provenance != nullptr) {
    std::vector<double> chosen_distinct;
    for (double v : chosen) push_distinct(chosen_distinct, v);
    provenance->harvest_size = harvest.size();
    provenance->neg_count = neg.size();
    provenance->pos_count = pos.size();
    provenance->chosen_count = chosen_distinct.size();
  }
  return distinct;
}

TransformPlan build_plan(const PlanConfig& config) {
  config.validate();
  TransformPlan plan;
  plan.dims = ImageDims(config.size);
  plan.config = config;
  plan.config.special_c_count = config.resolved_special_c_count();
  plan.q_values = build_q_values(config);
  const std::vector<double> harvest = harvest_special_c(config);
  plan.c_values = assemble_c_values(harvest, config, &plan.provenance);
  // The even-index selection can step over the zero run, and odd M has no
  // integer row at M/2 at all.
  const auto zero = std::lower_bound(plan.c_values.begin(), plan.c_values.end(), -kDedupTolerance);
  if (zero == plan.c_values.end() || *zero > kDedupTolerance) {
    plan.c_values.insert(zero, 0.0);
    plan.provenance.midline_added = true;
  }
  return plan;
}

TransformPlan make_plan(const ImageDims& dims, std::vector<double> q_values,
                        std::vector<double> c_values) {
  TransformPlan plan;
  plan.dims = dims;
  plan.config.size = dims.m();
  plan.config.m_divisions = q_values.size() > 1 ? static_cast<std::int64_t>(q_values.size()) - 1 : 1;
  plan.config.special_c_count = static_cast<std::int64_t>(std::max<std::size_t>(c_values.size(), 1));
  plan.q_values = std::move(q_values);
  plan.c_values = std::move(c_values);
  plan.provenance.chosen_count = plan.c_values.size();
  return plan;
}

std::string config_to_json(const PlanConfig& config) { return config_json(config).dump(2); }

PlanConfig config_from_json(const std::string& text, PlanConfig base) {
  const auto j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw Error(ErrorCode::kInvalidConfig, "plan config is not valid JSON");
  return overlay_config(j, std::move(base));
}

std::string plan_to_json(const TransformPlan& plan) {
  OrderedJson j;
  j["format"] = kPlanFormat;
  j["m"] = plan.dims.m();
  j["m_divisions"] = plan.config.m_divisions;
  j["layout"] = "rows=c,cols=q";
  j["q_values"] = plan.q_values;
  j["c_values"] = plan.c_values;
  j["config"] = config_json(plan.config);
  OrderedJson prov;
  prov["harvest_size"] = plan.provenance.harvest_size;
  prov["neg_count"] = plan.provenance.neg_count;
  prov["chosen_count"] = plan.provenance.chosen_count;
  prov["pos_count"] = plan.provenance.pos_count;
  prov["midline_added"] = plan.provenance.midline_added;
  prov["curve_count"] = plan.curve_count();
  j["provenance"] = prov;
  return j.dump(2) + "\n";
}

TransformPlan plan_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  require_format(!j.is_discarded() && j.is_object(), "not a JSON object");
  require_format(j.value("format", std::string{}) == kPlanFormat, "unsupported format version");

  TransformPlan plan;
  try {
    plan.dims = ImageDims(j.at("m").get<std::int64_t>());
    plan.q_values = j.at("q_values").get<std::vector<double>>();
    plan.c_values = j.at("c_values").get<std::vector<double>>();
    plan.config = overlay_config(j.at("config"), PlanConfig{});
    plan.config.m_divisions = j.at("m_divisions").get<std::int64_t>();
    if (j.contains("provenance")) {
      const auto& prov = j.at("provenance");
      plan.provenance.harvest_size = prov.value("harvest_size", std::size_t{0});
      plan.provenance.neg_count = prov.value("neg_count", std::size_t{0});
      plan.provenance.chosen_count = prov.value("chosen_count", std::size_t{0});
      plan.provenance.pos_count = prov.value("pos_count", std::size_t{0});
      plan.provenance.midline_added = prov.value("midline_added", false);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("plan document: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, std::string("plan document: ") + e.what());
  }

  require_format(plan.config.size == plan.dims.m(), "config size disagrees with m");
  require_format(!plan.q_values.empty() && !plan.c_values.empty(), "empty parameter grid");
  const auto finite = [](double v) { return std::isfinite(v); };
  require_format(std::all_of(plan.q_values.begin(), plan.q_values.end(), finite) &&
                     std::all_of(plan.c_values.begin(), plan.c_values.end(), finite),
                 "non-finite parameter");
  require_format(std::is_sorted(plan.q_values.begin(), plan.q_values.end()), "q_values unsorted");
  for (std::size_t i = 1; i < plan.c_values.size(); ++i) {
    require_format(plan.c_values[i] - plan.c_values[i - 1] > kDedupTolerance,
                   "c_values must be strictly ascending");
  }
  return plan;
}

}  // namespace radex
