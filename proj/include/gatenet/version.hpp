#pragma once

namespace gatenet {
inline constexpr const char* kVersion = "0.1.0";
}
