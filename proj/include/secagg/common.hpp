#pragma once

#include <cstdint>
#include <limits>

namespace secagg {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Sentinel for "no node" (node ids are dense: sensors 0..count-1, then the BS).
inline constexpr u64 kNoNode = std::numeric_limits<u64>::max();

}  // namespace secagg
