#pragma once

namespace ellgreen {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ellgreen
