#pragma once

namespace secopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace secopt
