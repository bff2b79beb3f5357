#pragma once

namespace raldpc {

inline constexpr const char* kVersion = "0.1.0";

} // namespace raldpc
