#pragma once

namespace rcpotts {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rcpotts
