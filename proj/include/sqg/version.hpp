#pragma once

namespace sqg {

inline constexpr const char* kArtifactVersion = "0.1.0";

} // namespace sqg
