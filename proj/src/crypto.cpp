#include "secagg/crypto.hpp"

namespace secagg {

namespace {

// Domain-separation prefixes for the digest primitive.
constexpr u8 kPrefixIdHash = 0x01;      // H1: node id -> scalar
constexpr u8 kPrefixProofHash = 0x02;   // h: (PK, r) -> challenge scalar
constexpr u8 kPrefixMacKey = 0x03;      // master secret + id -> MAC key

u64 fold_digest_mod(const Digest& d, u64 n) {
    u64 acc = 0;
    for (u8 byte : d) acc = add_mod(mul_mod(acc, 256, n), byte, n);
    return acc;
}

}  // namespace

void append_point_be(Bytes& out, const CurvePoint& pt) {
    if (pt.identity) {
        out.insert(out.end(), 16, 0xFF);
    } else {
        append_u64_be(out, pt.x);
        append_u64_be(out, pt.y);
    }
}

u64 hash_id_to_scalar(u64 node_id, u64 n) {
    Bytes msg{kPrefixIdHash};
    append_u64_be(msg, node_id);
    return fold_digest_mod(hash_digest(msg), n);
}

u64 hash_point_pair_to_scalar(const CurvePoint& pk, const CurvePoint& r, u64 n) {
    Bytes msg{kPrefixProofHash};
    append_point_be(msg, pk);
    append_point_be(msg, r);
    return fold_digest_mod(hash_digest(msg), n);
}

MacKey derive_mac_key(u64 master_secret, u64 node_id) {
    Bytes msg{kPrefixMacKey};
    append_u64_be(msg, master_secret);
    append_u64_be(msg, node_id);
    return hash_digest(msg);
}

KeyPair keygen(const Curve& curve, Rng& rng) {
    u64 sk = rng.uniform(1, curve.n() - 1);
    return KeyPair{sk, curve.mul(sk, curve.generator())};
}

Ciphertext encrypt(const Curve& curve, const CurvePoint& pk, u64 pt, u64 k) {
    k %= curve.n();
    if (k == 0) throw InvalidKeyError("encrypt: ephemeral scalar must be nonzero mod n");
    CurvePoint c = curve.mul(k, curve.generator());
    CurvePoint mask = curve.mul(k, pk);
    CurvePoint ct = curve.add(curve.map_to_point(pt), mask);
    return Ciphertext{c, ct};
}

u64 decrypt(const Curve& curve, u64 sk, const Ciphertext& c, u64 max_pt) {
    UnmapTable table(curve, max_pt);
    return decrypt(curve, sk, c, table);
}

u64 decrypt(const Curve& curve, u64 sk, const Ciphertext& c, const UnmapTable& table) {
    CurvePoint mask = curve.mul(sk % curve.n(), c.c);
    CurvePoint message = curve.add(c.ct, curve.negate(mask));
    if (auto pt = table.lookup(message)) return *pt;
    throw CorruptCiphertextError("decrypt: recovered point maps to no plaintext in range");
}

Ciphertext ct_add(const Curve& curve, const Ciphertext& a, const Ciphertext& b) {
    return Ciphertext{curve.add(a.c, b.c), curve.add(a.ct, b.ct)};
}

NodeCredentials init_node(const Curve& curve, u64 master_secret, u64 node_id, Rng& rng) {
    const u64 n = curve.n();
    NodeCredentials creds;
    creds.node_id = node_id;
    creds.s1 = rng.uniform(1, n - 1);
    creds.s2 = mul_mod(master_secret % n, hash_id_to_scalar(node_id, n), n);
    creds.pk = curve.mul(creds.s1, curve.generator());

    u64 k = rng.uniform(1, n - 1);
    CurvePoint r = curve.add(curve.mul(k, curve.generator()), creds.pk);
    creds.ct1 = hash_point_pair_to_scalar(creds.pk, r, n);
    creds.ct2 = sub_mod(k, mul_mod(creds.s1, creds.ct1, n), n);
    creds.mac_key = derive_mac_key(master_secret, node_id);
    return creds;
}

IdentSignature sign_identity(const Curve& curve, u64 s1, const CurvePoint& pk, Rng& rng) {
    const u64 n = curve.n();
    u64 k = rng.uniform(1, n - 1);
    CurvePoint r = curve.add(curve.mul(k, curve.generator()), pk);
    u64 ct1 = hash_point_pair_to_scalar(pk, r, n);
    u64 ct2 = sub_mod(k, mul_mod(s1 % n, ct1, n), n);
    return IdentSignature{r, ct1, ct2};
}

IdentSignature stacked_signature(const Curve& curve, const NodeCredentials& creds) {
    // r = ct2*G + ct1*PK + PK, the same recombination verifiers perform.
    CurvePoint r = curve.add(curve.mul(creds.ct2, curve.generator()),
                             curve.add(curve.mul(creds.ct1, creds.pk), creds.pk));
    return IdentSignature{r, creds.ct1, creds.ct2};
}

bool verify_identity(const Curve& curve, const CurvePoint& pk, const IdentSignature& sig) {
    const u64 n = curve.n();
    // Reject malformed material outright; no group operations on untrusted
    // points before membership is established.
    if (!curve.on_curve(pk) || pk.identity) return false;
    if (!curve.on_curve(sig.r)) return false;
    if (sig.ct1 >= n || sig.ct2 >= n) return false;

    CurvePoint recombined = curve.add(curve.mul(sig.ct2, curve.generator()),
                                      curve.add(curve.mul(sig.ct1, pk), pk));
    if (!(recombined == sig.r)) return false;
    return hash_point_pair_to_scalar(pk, sig.r, n) == sig.ct1;
}

bool bs_register(const Curve& curve, u64 master_secret, const NodeCredentials& creds) {
    const u64 n = curve.n();
    if (creds.s1 == 0 || creds.s1 >= n) return false;
    if (!(curve.mul(creds.s1, curve.generator()) == creds.pk)) return false;
    if (creds.s2 != mul_mod(master_secret % n, hash_id_to_scalar(creds.node_id, n), n))
        return false;
    if (creds.mac_key != derive_mac_key(master_secret, creds.node_id)) return false;
    return verify_identity(curve, creds.pk, stacked_signature(curve, creds));
}

}  // namespace secagg
