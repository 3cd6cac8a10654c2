#pragma once

namespace radex {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace radex
