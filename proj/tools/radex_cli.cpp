// radex: command-line front end for plan building, sinogram generation,
// coverage analysis, preprocessing, fusion and benchmarking.
//
// Exit codes: 0 ok, 2 usage, 3 config, 4 data, 5 internal.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "radex/bench.hpp"
#include "radex/coverage.hpp"
#include "radex/engine.hpp"
#include "radex/error.hpp"
#include "radex/fuse.hpp"
#include "radex/image_io.hpp"
#include "radex/manifest.hpp"
#include "radex/parallel.hpp"
#include "radex/plan.hpp"
#include "radex/preprocess.hpp"
#include "radex/sinogram_io.hpp"
#include "radex/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kConfig = 3, kData = 4, kInternal = 5 };

int exit_code_for(radex::ErrorCode code) {
  switch (code) {
    case radex::ErrorCode::kInvalidConfig:
    case radex::ErrorCode::kEmptyHarvest:
      return kConfig;
    default:
      return kData;
  }
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw radex::Error(radex::ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  radex::write_file_bytes(
      path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string config_file_text(const std::string& path) {
  try {
    return read_text(path);
  } catch (const radex::Error& e) {
    throw radex::Error(radex::ErrorCode::kInvalidConfig, e.what());
  }
}

radex::TransformPlan load_plan(const fs::path& path) {
  try {
    return radex::plan_from_json(read_text(path));
  } catch (const radex::Error& e) {
    throw radex::Error(radex::ErrorCode::kInvalidConfig, e.what());
  }
}

unsigned resolve_workers(const CLI::Option* flag, unsigned value) {
  if (flag->count() > 0) return value;
  if (const char* env = std::getenv("RADEX_WORKERS"); env != nullptr && *env != '\0') {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw UsageError(std::string("RADEX_WORKERS is not a number: ") + env);
    }
  }
  return radex::default_workers();
}

// Inputs as (absolute path, path relative to the input root) pairs, sorted.
std::vector<std::pair<fs::path, fs::path>> collect_inputs(const fs::path& in) {
  std::vector<std::pair<fs::path, fs::path>> files;
  if (fs::is_directory(in)) {
    for (const auto& entry : fs::recursive_directory_iterator(in)) {
      if (entry.is_regular_file() && radex::is_image_path(entry.path())) {
        files.emplace_back(entry.path(), fs::relative(entry.path(), in));
      }
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(in)) {
    files.emplace_back(in, in.filename());
  } else {
    throw radex::Error(radex::ErrorCode::kIo, "input does not exist: " + in.string());
  }
  return files;
}

radex::ImageGrid read_gray(const fs::path& path) {
  radex::ImageGrid image = radex::read_image(path);
  return image.channels() == 3 ? radex::to_grayscale(image) : image;
}

fs::path manifest_path_for(const fs::path& out) {
  return fs::path(out.string() + ".manifest.json");
}

// --- plan flags shared by plan and coverage --------------------------------

struct PlanFlags {
  std::string config_path;
  std::int64_t size = 0;
  std::int64_t m_div = 0;
  std::int64_t c_count = 0;
  std::vector<double> c_range;
  double c_step = 0.0;
  CLI::Option* size_opt = nullptr;
  CLI::Option* m_div_opt = nullptr;
  CLI::Option* c_count_opt = nullptr;
  CLI::Option* c_range_opt = nullptr;
  CLI::Option* c_step_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Plan config JSON (flags override it)");
    size_opt = cmd->add_option("--size", size, "Frame side M in pixels");
    m_div_opt = cmd->add_option("--m-div", m_div, "Number of q divisions (default 50)");
    c_count_opt = cmd->add_option("--c-count", c_count, "Special c values kept (default M/2)");
    c_range_opt = cmd->add_option("--c-range", c_range, "Boundary c range LOW,HIGH (default -1,1)")
                      ->expected(2)
                      ->delimiter(',');
    c_step_opt = cmd->add_option("--c-step", c_step, "Boundary c step (default 0.1)");
  }

  bool any_set() const {
    return size_opt->count() + m_div_opt->count() + c_count_opt->count() +
               c_range_opt->count() + c_step_opt->count() + (config_path.empty() ? 0 : 1) >
           0;
  }

  radex::PlanConfig resolve() const {
    radex::PlanConfig config;
    bool has_size = false;
    if (!config_path.empty()) {
      const std::string text = config_file_text(config_path);
      config = radex::config_from_json(text, config);
      has_size = nlohmann::json::parse(text).contains("size");
    }
    if (size_opt->count() > 0) {
      config.size = size;
      has_size = true;
    }
    if (!has_size) throw UsageError("--size is required (or a config file providing \"size\")");
    if (m_div_opt->count() > 0) config.m_divisions = m_div;
    if (c_count_opt->count() > 0) config.special_c_count = c_count;
    if (c_range_opt->count() > 0) {
      config.c_range_low = c_range.at(0);
      config.c_range_high = c_range.at(1);
    }
    if (c_step_opt->count() > 0) config.c_range_step = c_step;
    config.validate();
    return config;
  }
};

// --- commands --------------------------------------------------------------

struct Context {
  bool verbose = false;
};

int cmd_plan(const Context& ctx, const PlanFlags& flags, const std::string& out, bool coverage,
             unsigned workers) {
  const radex::PlanConfig config = flags.resolve();
  if (ctx.verbose) std::cerr << "plan config: " << radex::config_to_json(config) << '\n';
  const radex::TransformPlan plan = radex::build_plan(config);
  const std::string json = radex::plan_to_json(plan);

  std::ostream& info = out.empty() ? std::cerr : std::cout;
  if (out.empty()) {
    std::cout << json;
  } else {
    write_text(out, json);
    radex::RunManifest manifest("plan");
    manifest.set_config(ordered_json::parse(radex::config_to_json(plan.config)));
    manifest.set_plan_hash(radex::sha256_hex(json));
    manifest.add_output(out);
    manifest.write(manifest_path_for(out));
  }
  info << "q values: " << plan.q_values.size() << ", c values: " << plan.c_values.size()
       << " (special " << plan.provenance.chosen_count << ", neg " << plan.provenance.neg_count
       << ", pos " << plan.provenance.pos_count
       << (plan.provenance.midline_added ? ", midline" : "") << "), curves: " << plan.curve_count() << '\n';
  if (coverage) {
    const radex::CoverageMap map = radex::coverage_of(plan, workers);
    info << "coverage: " << map.fraction << '\n';
  }
  return kOk;
}

int cmd_transform(const Context& ctx, const std::string& plan_path, const std::string& in,
                  const std::string& out, bool render, unsigned workers) {
  auto plan = std::make_shared<const radex::TransformPlan>(load_plan(plan_path));
  const std::string plan_hash = radex::sha256_hex(radex::plan_to_json(*plan));
  if (ctx.verbose) std::cerr << "workers: " << workers << ", plan hash: " << plan_hash << '\n';

  radex::RunManifest manifest("transform");
  manifest.set_plan_hash(plan_hash);
  manifest.set_config({{"plan", plan_path}, {"render", render}, {"workers", workers}});
  manifest.add_input(plan_path);

  int status = kOk;
  for (const auto& [path, rel] : collect_inputs(in)) {
    try {
      manifest.add_input(path);
      const radex::Sinogram sinogram = radex::radex_sinogram(read_gray(path), plan, workers);
      fs::path target = fs::path(out) / rel;
      target.replace_extension(".radexsg");
      radex::write_sinogram(target, sinogram);
      ordered_json extra{{"source", path.string()}, {"rows", sinogram.rows},
                         {"cols", sinogram.cols}};
      if (render) {
        fs::path png = target;
        png.replace_extension(".sinogram.png");
        radex::write_image(png, radex::normalize_sinogram(sinogram));
        extra["render"] = png.string();
      }
      manifest.add_output(target, extra);
    } catch (const radex::Error& e) {
      std::cerr << "radex transform: " << path.string() << ": " << e.what() << '\n';
      manifest.add_failure(path, e.what());
      status = kData;
    }
  }
  manifest.write(fs::path(out) / "manifest.json");
  return status;
}

struct PreprocessFlags {
  std::string config_path;
  double crop_threshold = 0;
  std::size_t target_side = 0;
  double alpha = 0, beta = 0, gamma = 0, graham_sigma = 0, denoise_sigma = 0;
  CLI::Option* crop_opt = nullptr;
  CLI::Option* side_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* gsigma_opt = nullptr;
  CLI::Option* dsigma_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Preprocess config JSON (flags override it)");
    crop_opt = cmd->add_option("--crop-threshold", crop_threshold, "Black-border threshold");
    side_opt = cmd->add_option("--target-side", target_side, "Output side in pixels");
    alpha_opt = cmd->add_option("--alpha", alpha, "Contrast weight of the image");
    beta_opt = cmd->add_option("--beta", beta, "Weight of the blurred background");
    gamma_opt = cmd->add_option("--gamma", gamma, "Additive offset");
    gsigma_opt = cmd->add_option("--graham-sigma", graham_sigma, "Background blur sigma");
    dsigma_opt = cmd->add_option("--denoise-sigma", denoise_sigma, "Final blur sigma");
  }

  radex::PreprocessConfig resolve() const {
    radex::PreprocessConfig config;
    if (!config_path.empty()) {
      config = radex::preprocess_config_from_json(config_file_text(config_path), config);
    }
    if (crop_opt->count()) config.crop_threshold = crop_threshold;
    if (side_opt->count()) config.target_side = target_side;
    if (alpha_opt->count()) config.graham_alpha = alpha;
    if (beta_opt->count()) config.graham_beta = beta;
    if (gamma_opt->count()) config.graham_gamma = gamma;
    if (gsigma_opt->count()) config.graham_sigma = graham_sigma;
    if (dsigma_opt->count()) config.denoise_sigma = denoise_sigma;
    config.validate();
    return config;
  }
};

int cmd_preprocess(const Context& ctx, const PreprocessFlags& flags, const std::string& in,
                   const std::string& out) {
  const radex::PreprocessConfig config = flags.resolve();
  if (ctx.verbose) std::cerr << "preprocess config: " << radex::preprocess_config_to_json(config) << '\n';

  radex::RunManifest manifest("preprocess");
  manifest.set_config(ordered_json::parse(radex::preprocess_config_to_json(config)));
  const bool batch = fs::is_directory(in);
  int status = kOk;
  for (const auto& [path, rel] : collect_inputs(in)) {
    try {
      manifest.add_input(path);
      fs::path target = batch ? fs::path(out) / rel : fs::path(out);
      if (batch || target.extension() != ".pgm") target.replace_extension(".png");
      radex::write_image(target, radex::preprocess_pipeline(radex::read_image(path), config));
      manifest.add_output(target, {{"source", path.string()}});
    } catch (const radex::Error& e) {
      std::cerr << "radex preprocess: " << path.string() << ": " << e.what() << '\n';
      manifest.add_failure(path, e.what());
      status = kData;
    }
  }
  manifest.write(batch ? fs::path(out) / "manifest.json" : manifest_path_for(out));
  return status;
}

void fuse_one(const fs::path& image_path, const fs::path& sinogram_path, const fs::path& target,
              radex::RunManifest& manifest) {
  manifest.add_input(image_path);
  manifest.add_input(sinogram_path);
  const radex::Sinogram sinogram = radex::read_sinogram(sinogram_path);
  const std::string plan_hash = radex::sha256_hex(radex::plan_to_json(*sinogram.plan));
  const radex::FusedImage fused = radex::fuse(read_gray(image_path),
                                              radex::normalize_sinogram(sinogram),
                                              image_path.string(), plan_hash);
  radex::write_image(target, fused.grid);
  manifest.add_output(target, {{"source", image_path.string()},
                               {"sinogram", sinogram_path.string()},
                               {"plan_hash", plan_hash}});
}

int cmd_fuse(const std::string& image, const std::string& sinogram, const std::string& out) {
  radex::RunManifest manifest("fuse");
  manifest.set_config({{"image", image}, {"sinogram", sinogram}, {"order", "image-left"}});
  int status = kOk;
  if (!fs::is_directory(image)) {
    fuse_one(image, sinogram, out, manifest);
    manifest.write(manifest_path_for(out));
    return status;
  }
  for (const auto& [path, rel] : collect_inputs(image)) {
    fs::path sino = fs::path(sinogram) / rel;
    sino.replace_extension(".radexsg");
    fs::path target = fs::path(out) / rel;
    target.replace_extension(".png");
    try {
      fuse_one(path, sino, target, manifest);
    } catch (const radex::Error& e) {
      std::cerr << "radex fuse: " << path.string() << ": " << e.what() << '\n';
      manifest.add_failure(path, e.what());
      status = kData;
    }
  }
  manifest.write(fs::path(out) / "manifest.json");
  return status;
}

int cmd_radon(const std::string& in, std::size_t angles, const std::string& out,
              unsigned workers) {
  radex::RunManifest manifest("radon");
  manifest.set_config({{"angles", angles}});
  manifest.add_input(in);
  const radex::LinearSinogram s = radex::radon_linear(read_gray(in), angles, workers);
  radex::write_image(out, radex::normalize_matrix(s.rows, s.cols, s.values, s.cols, s.rows));
  manifest.add_output(out, {{"rows", s.rows}, {"cols", s.cols}});
  manifest.write(manifest_path_for(out));
  return kOk;
}

int cmd_coverage(const Context& ctx, const PlanFlags& flags, const std::string& plan_path,
                 const std::string& sweep, const std::string& out, unsigned workers) {
  radex::RunManifest manifest("coverage");
  if (!sweep.empty()) {
    manifest.add_input(sweep);
    const auto configs = radex::sweep_configs_from_json(config_file_text(sweep));
    const auto rows = radex::coverage_sweep(configs, workers);
    std::ostringstream csv;
    radex::write_sweep_csv(csv, rows);
    if (out.empty()) {
      std::cout << csv.str();
      return kOk;
    }
    write_text(out, csv.str());
    manifest.set_config({{"sweep", sweep}, {"rows", rows.size()}});
    manifest.add_output(out);
    manifest.write(manifest_path_for(out));
    for (const auto& r : rows) {
      if (r.error) std::cerr << "radex coverage: config M=" << r.config.size << ": " << *r.error << '\n';
    }
    return kOk;
  }

  radex::TransformPlan plan;
  if (!plan_path.empty()) {
    plan = load_plan(plan_path);
    manifest.add_input(plan_path);
  } else {
    plan = radex::build_plan(flags.resolve());
  }
  if (ctx.verbose) std::cerr << "plan config: " << radex::config_to_json(plan.config) << '\n';
  const radex::CoverageMap map = radex::coverage_of(plan, workers);
  std::cout << "M=" << plan.dims.m() << " curves=" << plan.curve_count()
            << " covered=" << map.covered << " fraction=" << map.fraction << '\n';
  if (!out.empty()) {
    radex::write_image(out, radex::coverage_image(map));
    manifest.set_plan_hash(radex::sha256_hex(radex::plan_to_json(plan)));
    manifest.set_config(ordered_json::parse(radex::config_to_json(plan.config)));
    manifest.add_output(out, {{"fraction", map.fraction}});
    manifest.write(manifest_path_for(out));
  }
  return kOk;
}

int cmd_bench(const std::vector<std::int64_t>& sizes, std::size_t reps, unsigned workers,
              const std::string& out) {
  const radex::BenchReport report = radex::run_scaling_bench(sizes, reps, workers);
  radex::print_bench_table(std::cout, report);
  if (!out.empty()) {
    write_text(out, radex::bench_report_to_json(report));
    radex::RunManifest manifest("bench");
    manifest.set_config({{"sizes", sizes}, {"repetitions", reps}, {"workers", workers}});
    manifest.add_output(out);
    manifest.write(manifest_path_for(out));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RadEx non-linear Radon transform toolkit"};
  app.set_version_flag("--version", radex::kVersion);
  app.require_subcommand(1);
  Context ctx;
  app.add_flag("-v,--verbose", ctx.verbose, "Print effective configuration");

  unsigned workers = 0;
  // Each subcommand gets its own --workers option; resolved after parsing.
  std::vector<std::pair<CLI::App*, CLI::Option*>> worker_opts;
  const auto add_workers = [&](CLI::App* cmd) {
    worker_opts.emplace_back(cmd, cmd->add_option("--workers", workers,
                                                  "Worker threads (default $RADEX_WORKERS or all cores)"));
  };

  auto* plan_cmd = app.add_subcommand("plan", "Build a transform plan");
  PlanFlags plan_flags;
  plan_flags.attach(plan_cmd);
  std::string plan_out;
  bool plan_coverage = false;
  plan_cmd->add_option("--out", plan_out, "Plan JSON destination (default stdout)");
  plan_cmd->add_flag("--coverage", plan_coverage, "Also report the plan's pixel coverage");
  add_workers(plan_cmd);

  auto* transform_cmd = app.add_subcommand("transform", "Generate sinograms");
  std::string t_plan, t_in, t_out;
  bool t_render = false;
  transform_cmd->add_option("--plan", t_plan, "Plan JSON")->required();
  transform_cmd->add_option("--in", t_in, "Image file or directory")->required();
  transform_cmd->add_option("--out", t_out, "Output directory")->required();
  transform_cmd->add_flag("--render", t_render, "Also write normalised PNG renders");
  add_workers(transform_cmd);

  auto* pre_cmd = app.add_subcommand("preprocess", "Fundus preprocessing chain");
  PreprocessFlags pre_flags;
  pre_flags.attach(pre_cmd);
  std::string p_in, p_out;
  pre_cmd->add_option("--in", p_in, "Image file or directory")->required();
  pre_cmd->add_option("--out", p_out, "Output file or directory")->required();

  auto* fuse_cmd = app.add_subcommand("fuse", "Concatenate image and sinogram render");
  std::string f_image, f_sino, f_out, f_config;
  fuse_cmd->add_option("--image", f_image, "Preprocessed image file or directory")->required();
  fuse_cmd->add_option("--sinogram", f_sino, "Sinogram file or directory")->required();
  fuse_cmd->add_option("--out", f_out, "Output PNG or directory")->required();
  fuse_cmd->add_option("--config", f_config, "Accepted for uniformity; fusion has no parameters");

  auto* radon_cmd = app.add_subcommand("radon", "Linear Radon baseline sinogram");
  std::string r_in, r_out, r_config;
  std::size_t r_angles = radex::kDefaultAngleCount;
  radon_cmd->add_option("--in", r_in, "Square input image")->required();
  radon_cmd->add_option("--angles", r_angles, "Number of angles over [0, 180)");
  radon_cmd->add_option("--out", r_out, "Output PNG")->required();
  radon_cmd->add_option("--config", r_config, "JSON with an \"angles\" key");
  add_workers(radon_cmd);

  auto* cov_cmd = app.add_subcommand("coverage", "Pixel coverage of a plan or a sweep");
  PlanFlags cov_flags;
  cov_flags.attach(cov_cmd);
  std::string c_plan, c_sweep, c_out;
  cov_cmd->add_option("--plan", c_plan, "Plan JSON (instead of plan flags)");
  cov_cmd->add_option("--sweep", c_sweep, "Sweep JSON listing plan configs");
  cov_cmd->add_option("--out", c_out, "Coverage PNG/PGM, or CSV table with --sweep");
  add_workers(cov_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Scaling benchmark of the transform");
  std::vector<std::int64_t> b_sizes{128, 256, 512};
  std::size_t b_reps = 5;
  std::string b_out, b_config;
  bench_cmd->add_option("--sizes", b_sizes, "Frame sides")->delimiter(',');
  bench_cmd->add_option("--reps", b_reps, "Timed repetitions per size");
  bench_cmd->add_option("--out", b_out, "Report JSON");
  bench_cmd->add_option("--config", b_config, "JSON with sizes/reps keys");
  add_workers(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    CLI::Option* workers_opt = nullptr;
    for (auto& [cmd, opt] : worker_opts) {
      if (cmd->parsed()) workers_opt = opt;
    }
    const unsigned resolved = workers_opt ? resolve_workers(workers_opt, workers) : 1;

    if (plan_cmd->parsed()) return cmd_plan(ctx, plan_flags, plan_out, plan_coverage, resolved);
    if (transform_cmd->parsed()) return cmd_transform(ctx, t_plan, t_in, t_out, t_render, resolved);
    if (pre_cmd->parsed()) return cmd_preprocess(ctx, pre_flags, p_in, p_out);
    if (fuse_cmd->parsed()) return cmd_fuse(f_image, f_sino, f_out);
    if (radon_cmd->parsed()) {
      if (!r_config.empty() && radon_cmd->get_option("--angles")->count() == 0) {
        const auto j = nlohmann::json::parse(config_file_text(r_config), nullptr, false);
        if (j.is_discarded()) throw radex::Error(radex::ErrorCode::kInvalidConfig, "bad radon config");
        r_angles = j.value("angles", r_angles);
      }
      return cmd_radon(r_in, r_angles, r_out, resolved);
    }
    if (cov_cmd->parsed()) {
      if (c_plan.empty() && c_sweep.empty() && !cov_flags.any_set()) {
        throw UsageError("coverage needs --plan, --sweep or plan flags");
      }
      return cmd_coverage(ctx, cov_flags, c_plan, c_sweep, c_out, resolved);
    }
    if (bench_cmd->parsed()) {
      if (!b_config.empty()) {
        const auto j = nlohmann::json::parse(config_file_text(b_config), nullptr, false);
        if (j.is_discarded()) throw radex::Error(radex::ErrorCode::kInvalidConfig, "bad bench config");
        if (bench_cmd->get_option("--sizes")->count() == 0 && j.contains("sizes")) {
          b_sizes = j["sizes"].get<std::vector<std::int64_t>>();
        }
        if (bench_cmd->get_option("--reps")->count() == 0) b_reps = j.value("reps", b_reps);
      }
      return cmd_bench(b_sizes, b_reps, resolved, b_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "radex: " << e.what() << '\n';
    return kUsage;
  } catch (const radex::Error& e) {
    std::cerr << "radex: " << radex::to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "radex: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
