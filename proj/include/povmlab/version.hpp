#pragma once

namespace povmlab {

inline constexpr const char *kVersion = "0.1.0";

} // namespace povmlab
