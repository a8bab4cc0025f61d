#pragma once

namespace cosparse {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cosparse
