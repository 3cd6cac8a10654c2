#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace radex {

std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_hex(const std::string& text);
std::string sha256_file(const std::filesystem::path& path);

/// Record of one CLI run: what went in, what came out, and under which
/// parameters.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void set_config(nlohmann::ordered_json config) { config_ = std::move(config); }
  void set_plan_hash(std::string hash) { plan_hash_ = std::move(hash); }
  void add_input(const std::filesystem::path& path);
  /// Hashes the file as it exists now; call after the output is written.
  void add_output(const std::filesystem::path& path, nlohmann::ordered_json extra = {});
  void add_failure(const std::filesystem::path& input, const std::string& message);

  std::size_t failure_count() const noexcept { return failures_.size(); }

  nlohmann::ordered_json to_json() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string command_;
  std::string started_at_;
  std::string plan_hash_;
  nlohmann::ordered_json config_;
  nlohmann::ordered_json inputs_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json outputs_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json failures_ = nlohmann::ordered_json::array();
};

}  // namespace radex
