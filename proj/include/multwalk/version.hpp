#pragma once

namespace multwalk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace multwalk
