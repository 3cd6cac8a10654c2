#include "radex/sinogram_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "radex/error.hpp"

namespace radex {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw Error(ErrorCode::kFormat, "sinogram file is truncated");
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::uint32_t u32() {
    const auto s = take(4);
    return static_cast<std::uint32_t>(s[0]) | (static_cast<std::uint32_t>(s[1]) << 8) |
           (static_cast<std::uint32_t>(s[2]) << 16) | (static_cast<std::uint32_t>(s[3]) << 24);
  }

  bool done() const noexcept { return pos_ == bytes_.size(); }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_sinogram(const Sinogram& sinogram) {
  if (!sinogram.plan) throw Error(ErrorCode::kFormat, "sinogram carries no plan");
  const std::string plan_json = plan_to_json(*sinogram.plan);

  std::vector<std::uint8_t> out;
  out.reserve(8 + 8 + 4 * sinogram.values.size() + 4 + plan_json.size());
  for (char ch : kSinogramMagic) out.push_back(static_cast<std::uint8_t>(ch));
  put_u32(out, static_cast<std::uint32_t>(sinogram.rows));
  put_u32(out, static_cast<std::uint32_t>(sinogram.cols));
  for (double v : sinogram.values) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  put_u32(out, static_cast<std::uint32_t>(plan_json.size()));
  out.insert(out.end(), plan_json.begin(), plan_json.end());
  return out;
}

Sinogram decode_sinogram(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  const auto magic = in.take(sizeof(kSinogramMagic));
  if (!std::equal(magic.begin(), magic.end(), std::begin(kSinogramMagic),
                  [](std::uint8_t a, char b) { return a == static_cast<std::uint8_t>(b); })) {
    throw Error(ErrorCode::kFormat, "not a RADEXSG1 sinogram file");
  }
  Sinogram s;
  s.rows = in.u32();
  s.cols = in.u32();
  if (static_cast<std::uint64_t>(s.rows) * s.cols * 4 > in.remaining()) {
    throw Error(ErrorCode::kFormat, "sinogram file is truncated");
  }
  s.values.resize(s.rows * s.cols);
  for (double& v : s.values) v = static_cast<double>(std::bit_cast<float>(in.u32()));
  const std::uint32_t json_length = in.u32();
  const auto json = in.take(json_length);
  if (!in.done()) throw Error(ErrorCode::kFormat, "trailing bytes after sinogram plan");

  auto plan = std::make_shared<TransformPlan>(
      plan_from_json(std::string(json.begin(), json.end())));
  if (plan->c_values.size() != s.rows || plan->q_values.size() != s.cols) {
    throw Error(ErrorCode::kFormat, "sinogram header dimensions disagree with its plan");
  }
  s.plan = std::move(plan);
  return s;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

void write_sinogram(const std::filesystem::path& path, const Sinogram& sinogram) {
  write_file_bytes(path, encode_sinogram(sinogram));
}

Sinogram read_sinogram(const std::filesystem::path& path) {
  return decode_sinogram(read_file_bytes(path));
}

}  // namespace radex
