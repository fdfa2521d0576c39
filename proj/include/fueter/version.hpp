#pragma once

namespace fueter {

inline constexpr const char* kArtifactName = "fueter-verify";
inline constexpr const char* kVersion = "0.1.0";

} // namespace fueter
