#pragma once

namespace dpea {

inline constexpr const char* kEngineVersion = "0.1.0";

} // namespace dpea
