#pragma once

#include <optional>
#include <string>
#include <unordered_map>

#include "secagg/common.hpp"
#include "secagg/errors.hpp"

namespace secagg {

// Modular helpers over word-sized moduli. Products go through 128-bit
// intermediates, so any modulus below 2^63 is safe.
u64 add_mod(u64 a, u64 b, u64 m);
u64 sub_mod(u64 a, u64 b, u64 m);
u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
u64 inv_mod(u64 a, u64 m);  // m prime, a != 0 mod m
bool is_prime_u64(u64 n);   // trial division; fine for the word-sized moduli used here

// Affine point, identity flagged explicitly. Plain data: nothing here enforces
// curve membership, the group operations validate their inputs instead.
struct CurvePoint {
    u64 x = 0;
    u64 y = 0;
    bool identity = true;

    static CurvePoint infinity() { return CurvePoint{}; }
    static CurvePoint affine(u64 px, u64 py) { return CurvePoint{px, py, false}; }

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Short Weierstrass curve y^2 = x^3 + ax + b over F_p with a generator of
// prime order n. Construction validates the whole parameter set.
class Curve {
public:
    Curve(u64 p, u64 a, u64 b, CurvePoint generator, u64 n);

    u64 p() const { return p_; }
    u64 a() const { return a_; }
    u64 b() const { return b_; }
    u64 n() const { return n_; }
    const CurvePoint& generator() const { return g_; }

    bool on_curve(const CurvePoint& pt) const;
    CurvePoint negate(const CurvePoint& pt) const;

    // Chord-tangent group law. Off-curve inputs raise InvalidPointError.
    CurvePoint add(const CurvePoint& lhs, const CurvePoint& rhs) const;

    // Double-and-add; k is not reduced, so k = n gives the identity.
    CurvePoint mul(u64 k, const CurvePoint& pt) const;

    // Additive plaintext embedding t -> t*G, defined for t < n.
    CurvePoint map_to_point(u64 t) const;

    // Inverse of the embedding for t <= max_plaintext. Throws
    // UnmappablePointError when no such t exists.
    u64 unmap_point(const CurvePoint& tp, u64 max_plaintext) const;

    // Flat text record: "p=<dec> a=<dec> b=<dec> gx=<dec> gy=<dec> n=<dec>".
    std::string to_record() const;
    static Curve from_record(const std::string& record);

private:
    friend class UnmapTable;
    CurvePoint add_unchecked(const CurvePoint& lhs, const CurvePoint& rhs) const;
    void require_on_curve(const CurvePoint& pt) const;

    u64 p_, a_, b_, n_;
    CurvePoint g_;
};

// Precomputed discrete-log helper for a fixed plaintext bound: a full lookup
// table below 2^16, baby-step/giant-step above, so lookup cost is flat and
// predictable. Curve::unmap_point builds one per call; long-lived decrypters
// keep an instance.
class UnmapTable {
public:
    UnmapTable(const Curve& curve, u64 max_plaintext);

    std::optional<u64> lookup(const CurvePoint& tp) const;
    u64 max_plaintext() const { return max_plaintext_; }

private:
    static constexpr u64 kFullTableLimit = 1ull << 16;

    Curve curve_;  // by value: keeps the table self-contained and movable
    u64 max_plaintext_;
    u64 baby_count_ = 0;          // table holds j*G for j in [1, baby_count]
    CurvePoint giant_step_;       // -(baby_count * G); unused in full-table mode
    bool full_table_;
    // x -> (y, j) for j*G, first writer wins. A point and its negation share
    // an x, so on a y mismatch the lookup resolves the entry as (n - j)*G;
    // the discrete log is unique mod n either way.
    std::unordered_map<u64, std::pair<u64, u64>> table_;
};

}  // namespace secagg
