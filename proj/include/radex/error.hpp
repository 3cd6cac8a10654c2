#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radex {

enum class ErrorCode {
  kInvalidConfig,
  kDegenerateInverse,
  kOutOfRange,
  kEmptyHarvest,
  kDimensionMismatch,
  kChannelMismatch,
  kEmptyRetina,
  kFormat,
  kIo,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Typed failure raised by every radex module. The code is stable and is what
/// the CLI maps onto exit statuses and the bindings onto exception attributes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace radex
