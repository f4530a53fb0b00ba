#pragma once

namespace credal {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace credal
