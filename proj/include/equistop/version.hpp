#pragma once

namespace equistop {
inline constexpr const char* kVersion = "1.0.0";
}
