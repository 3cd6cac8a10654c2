#include "radex/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "radex/error.hpp"
#include "radex/sinogram_io.hpp"
#include "radex/version.hpp"

namespace radex {
namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 digest failed");
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
  return out.str();
}

std::string sha256_hex(const std::string& text) {
  return sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string sha256_file(const std::filesystem::path& path) {
  return sha256_hex(read_file_bytes(path));
}

RunManifest::RunManifest(std::string command)
    : command_(std::move(command)), started_at_(utc_now()) {}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_.push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
}

void RunManifest::add_output(const std::filesystem::path& path, nlohmann::ordered_json extra) {
  nlohmann::ordered_json entry{{"path", path.string()}, {"sha256", sha256_file(path)}};
  if (extra.is_object()) {
    for (auto it = extra.begin(); it != extra.end(); ++it) entry[it.key()] = it.value();
  }
  outputs_.push_back(std::move(entry));
}

void RunManifest::add_failure(const std::filesystem::path& input, const std::string& message) {
  failures_.push_back({{"path", input.string()}, {"error", message}});
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "radex";
  j["version"] = kVersion;
  j["command"] = command_;
  if (!plan_hash_.empty()) j["plan_hash"] = plan_hash_;
  j["config"] = config_.is_null() ? nlohmann::ordered_json::object() : config_;
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  j["failures"] = failures_;
  j["started_at"] = started_at_;
  j["finished_at"] = utc_now();
  return j;
}

void RunManifest::write(const std::filesystem::path& path) const {
  const std::string text = to_json().dump(2) + "\n";
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace radex
