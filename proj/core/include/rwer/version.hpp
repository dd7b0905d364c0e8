#pragma once

namespace rwer {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rwer
