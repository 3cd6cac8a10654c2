#include "radex/error.hpp"

namespace radex {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kDegenerateInverse:
      return "DegenerateInverse";
    case ErrorCode::kOutOfRange:
      return "OutOfRange";
    case ErrorCode::kEmptyHarvest:
      return "EmptyHarvest";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kChannelMismatch:
      return "ChannelMismatch";
    case ErrorCode::kEmptyRetina:
      return "EmptyRetina";
    case ErrorCode::kFormat:
      return "FormatError";
    case ErrorCode::kIo:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace radex
