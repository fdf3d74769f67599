#pragma once

namespace frog {

inline constexpr const char* kVersion = "frogsim 0.1.0";

} // namespace frog
