#pragma once

namespace satfrac {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace satfrac
