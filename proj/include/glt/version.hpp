#pragma once

namespace glt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace glt
