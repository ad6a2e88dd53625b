#pragma once

namespace embedlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace embedlab
