#pragma once

namespace gb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gb
