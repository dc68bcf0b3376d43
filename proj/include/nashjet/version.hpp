#pragma once

namespace nashjet {

inline constexpr const char* version = "0.1.0";

}  // namespace nashjet
