#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "radex/engine.hpp"

namespace radex {

// On-disk sinogram layout, all integers little-endian:
//   "RADEXSG1" | u32 rows | u32 cols | rows*cols f32 values (row-major,
//   rows = c, cols = q) | u32 json_length | plan JSON (UTF-8)
inline constexpr char kSinogramMagic[8] = {'R', 'A', 'D', 'E', 'X', 'S', 'G', '1'};

std::vector<std::uint8_t> encode_sinogram(const Sinogram& sinogram);

/// Values come back as the stored 32-bit floats. Throws Error(kFormat) on a
/// bad magic, truncated payload or inconsistent plan.
Sinogram decode_sinogram(std::span<const std::uint8_t> bytes);

void write_sinogram(const std::filesystem::path& path, const Sinogram& sinogram);
Sinogram read_sinogram(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace radex
