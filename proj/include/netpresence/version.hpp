#pragma once

namespace netpresence {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace netpresence
