#ifndef CCW_VERSION_HPP
#define CCW_VERSION_HPP

namespace ccw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ccw

#endif  // CCW_VERSION_HPP
