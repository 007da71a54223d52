#pragma once

namespace qbm {

inline constexpr const char* version = "0.1.0";

}  // namespace qbm
