#pragma once

#include <string>

#include "secagg/curve.hpp"
#include "secagg/digest.hpp"
#include "secagg/rng.hpp"

namespace secagg {

// Additively homomorphic ElGamal over the curve group, plus the node
// credential scheme layered on top: per-node signing keys, a Schnorr-style
// identity proof, and base-station-derived MAC keys.

struct KeyPair {
    u64 sk = 0;       // scalar in [1, n-1]
    CurvePoint pk;    // sk * G
};

struct Ciphertext {
    CurvePoint c;     // ephemeral component k*G
    CurvePoint ct;    // masked message t*G + k*pk

    friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

// Identity proof: commitment r = k*G + PK, challenge ct1 = h(PK, r) mod n,
// response ct2 = k - s1*ct1 mod n. Verification recombines
// ct2*G + ct1*PK + PK and must land back on r.
struct IdentSignature {
    CurvePoint r;
    u64 ct1 = 0;
    u64 ct2 = 0;

    friend bool operator==(const IdentSignature&, const IdentSignature&) = default;
};

// Everything the base station pre-stacks on a node before deployment.
struct NodeCredentials {
    u64 node_id = 0;
    u64 s1 = 0;            // private signing key
    u64 s2 = 0;            // master-secret binding x * H1(id) mod n
    CurvePoint pk;         // s1 * G
    u64 ct1 = 0;           // pre-stacked proof challenge
    u64 ct2 = 0;           // pre-stacked proof response
    MacKey mac_key{};      // shared with the base station / cluster agent
};

// Hash-derived scalars with one-byte domain separation so the three uses of
// the digest primitive can never collide.
u64 hash_id_to_scalar(u64 node_id, u64 n);                          // H1
u64 hash_point_pair_to_scalar(const CurvePoint& pk, const CurvePoint& r, u64 n);  // h
MacKey derive_mac_key(u64 master_secret, u64 node_id);

// 16-byte point encoding used inside hashes: x then y as 8-byte big-endian,
// identity as all-ones in both slots. Matches the packet wire format.
void append_point_be(Bytes& out, const CurvePoint& pt);

KeyPair keygen(const Curve& curve, Rng& rng);

// k is the caller-supplied ephemeral in [1, n-1]; deterministic given k.
Ciphertext encrypt(const Curve& curve, const CurvePoint& pk, u64 pt, u64 k);

// Recovers CT - sk*C and inverts the plaintext embedding. Throws
// CorruptCiphertextError when no plaintext <= max_pt fits.
u64 decrypt(const Curve& curve, u64 sk, const Ciphertext& c, u64 max_pt);
u64 decrypt(const Curve& curve, u64 sk, const Ciphertext& c, const UnmapTable& table);

Ciphertext ct_add(const Curve& curve, const Ciphertext& a, const Ciphertext& b);

// Base-station provisioning: draws s1 and the proof ephemeral from rng,
// binds the node to the master secret via s2, derives the MAC key.
NodeCredentials init_node(const Curve& curve, u64 master_secret, u64 node_id, Rng& rng);

// Fresh per-message identity proof (new ephemeral each call).
IdentSignature sign_identity(const Curve& curve, u64 s1, const CurvePoint& pk, Rng& rng);

// Reconstructs the proof pre-stacked at init time from (ct1, ct2).
IdentSignature stacked_signature(const Curve& curve, const NodeCredentials& creds);

// Pure predicate: malformed or off-curve input rejects, never throws.
bool verify_identity(const Curve& curve, const CurvePoint& pk, const IdentSignature& sig);

// Base-station registration check on freshly initialized credentials:
// master binding, key consistency, and the pre-stacked proof must all hold.
bool bs_register(const Curve& curve, u64 master_secret, const NodeCredentials& creds);

}  // namespace secagg
