#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "secagg/common.hpp"

namespace secagg {

// Digest backend is SHA-256; recorded in run headers so outputs are comparable.
inline constexpr std::size_t kDigestBytes = 32;
inline constexpr std::string_view kDigestAlgorithm = "SHA-256";

using Digest = std::array<u8, kDigestBytes>;
using MacTag = std::array<u8, kDigestBytes>;
using MacKey = std::array<u8, kDigestBytes>;
using Bytes = std::vector<u8>;

Digest hash_digest(std::span<const u8> message);

// Keyed digest over (key length || key || message). Empty key is rejected.
MacTag mac_sign(std::span<const u8> key, std::span<const u8> message);
bool mac_verify(std::span<const u8> key, std::span<const u8> message, const MacTag& tag);

// Domain-separated sub-seed so independent streams never overlap.
u64 derive_seed(u64 master, std::string_view tag);

void append_u64_be(Bytes& out, u64 v);
u64 read_u64_be(const u8* p);

}  // namespace secagg
