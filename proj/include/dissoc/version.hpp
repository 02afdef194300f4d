#pragma once

namespace dissoc {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace dissoc
