#ifndef CYCLICITY_VERSION_HPP
#define CYCLICITY_VERSION_HPP

namespace cyc {
inline constexpr const char* kToolName = "cyclicity";
inline constexpr const char* kToolVersion = "0.1.0";
} // namespace cyc

#endif
