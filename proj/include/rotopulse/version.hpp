#pragma once

namespace rotopulse {
inline constexpr const char* kVersion = "0.1.0";
}
