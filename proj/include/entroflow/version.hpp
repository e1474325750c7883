#pragma once

namespace entroflow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace entroflow
