#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "radex/image.hpp"

namespace radex {

/// Decodes PNG, JPEG or PGM into [0, 1] intensities (RGB order, alpha
/// dropped). Throws Error(kIo) when the file cannot be decoded.
ImageGrid read_image(const std::filesystem::path& path);

/// 8-bit quantisation: round(clamp(v, 0, 1) * 255).
std::vector<std::uint8_t> to_8bit(const ImageGrid& image);

/// Writes an 8-bit PNG, or binary PGM when the extension is .pgm.
void write_image(const std::filesystem::path& path, const ImageGrid& image);

bool is_image_path(const std::filesystem::path& path);

}  // namespace radex
