#pragma once

namespace bnls {

inline constexpr const char* kVersion = "bnls 0.1.0";

}  // namespace bnls
