#pragma once

namespace rvc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rvc
