#pragma once

namespace wdl {

inline constexpr const char* version = "0.1.0";

}  // namespace wdl
