#include "secagg/digest.hpp"

#include <openssl/evp.h>

#include <cstring>

#include "secagg/errors.hpp"

namespace secagg {

Digest hash_digest(std::span<const u8> message) {
    Digest out{};
    unsigned int len = 0;
    if (EVP_Digest(message.data(), message.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != kDigestBytes) {
        throw Error("SHA-256 digest failed");
    }
    return out;
}

MacTag mac_sign(std::span<const u8> key, std::span<const u8> message) {
    if (key.empty()) throw InvalidKeyError("MAC key must be nonempty");
    Bytes input;
    input.reserve(8 + key.size() + message.size());
    append_u64_be(input, key.size());
    input.insert(input.end(), key.begin(), key.end());
    input.insert(input.end(), message.begin(), message.end());
    return hash_digest(input);
}

bool mac_verify(std::span<const u8> key, std::span<const u8> message, const MacTag& tag) {
    return mac_sign(key, message) == tag;
}

u64 derive_seed(u64 master, std::string_view tag) {
    Bytes input;
    append_u64_be(input, master);
    input.insert(input.end(), tag.begin(), tag.end());
    return read_u64_be(hash_digest(input).data());
}

void append_u64_be(Bytes& out, u64 v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
        out.push_back(static_cast<u8>(v >> shift));
    }
}

u64 read_u64_be(const u8* p) {
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | p[i];
    return v;
}

}  // namespace secagg
