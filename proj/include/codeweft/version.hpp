#pragma once

namespace codeweft {

inline constexpr const char *kVersion = "0.1.0";
inline constexpr const char *kUserAgent = "codeweft/0.1.0";

}  // namespace codeweft
