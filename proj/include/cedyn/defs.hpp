#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace cedyn {

// Sentinel return time for "no further return within the computed orbit".
inline constexpr std::size_t kSInf = std::numeric_limits<std::size_t>::max();

// Sentinel depth for an exact hit of a critical point / ball center.
inline constexpr std::int64_t kDepthInf = std::numeric_limits<std::int64_t>::max();

}  // namespace cedyn
