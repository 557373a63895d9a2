#include "secagg/curve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace secagg {

u64 add_mod(u64 a, u64 b, u64 m) {
    return (static_cast<unsigned __int128>(a) + b) % m;
}

u64 sub_mod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    return a >= b ? a - b : a + (m - b);
}

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 acc = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) acc = mul_mod(acc, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

u64 inv_mod(u64 a, u64 m) {
    a %= m;
    if (a == 0) throw DomainError("inv_mod: no inverse of 0");
    return pow_mod(a, m - 2, m);  // Fermat; m is prime throughout this library
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (u64 d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

Curve::Curve(u64 p, u64 a, u64 b, CurvePoint generator, u64 n)
    : p_(p), a_(a % (p > 0 ? p : 1)), b_(b % (p > 0 ? p : 1)), n_(n), g_(generator) {
    if (p_ < 5 || !is_prime_u64(p_))
        throw DomainError("curve: field modulus must be a prime > 3");
    if (p_ >= (1ull << 63))
        throw DomainError("curve: field modulus must fit in 63 bits");
    // Singular curves have no well-defined group law: 4a^3 + 27b^2 != 0.
    u64 disc = add_mod(mul_mod(4, pow_mod(a_, 3, p_), p_),
                       mul_mod(27, mul_mod(b_, b_, p_), p_), p_);
    if (disc == 0) throw DomainError("curve: singular parameters (4a^3 + 27b^2 = 0)");
    if (g_.identity || g_.x >= p_ || g_.y >= p_ || !on_curve(g_))
        throw DomainError("curve: generator is not an affine point on the curve");
    if (n_ < 2 || !is_prime_u64(n_))
        throw DomainError("curve: group order must be prime");
    if (!mul(n_, g_).identity)
        throw DomainError("curve: generator order does not match n");
}

bool Curve::on_curve(const CurvePoint& pt) const {
    if (pt.identity) return true;
    if (pt.x >= p_ || pt.y >= p_) return false;
    u64 lhs = mul_mod(pt.y, pt.y, p_);
    u64 rhs = add_mod(add_mod(pow_mod(pt.x, 3, p_), mul_mod(a_, pt.x, p_), p_), b_, p_);
    return lhs == rhs;
}

void Curve::require_on_curve(const CurvePoint& pt) const {
    if (!on_curve(pt)) throw InvalidPointError("point is not on the curve");
}

CurvePoint Curve::negate(const CurvePoint& pt) const {
    require_on_curve(pt);
    if (pt.identity) return pt;
    return CurvePoint::affine(pt.x, pt.y == 0 ? 0 : p_ - pt.y);
}

CurvePoint Curve::add(const CurvePoint& lhs, const CurvePoint& rhs) const {
    require_on_curve(lhs);
    require_on_curve(rhs);
    return add_unchecked(lhs, rhs);
}

CurvePoint Curve::add_unchecked(const CurvePoint& lhs, const CurvePoint& rhs) const {
    assert(on_curve(lhs) && on_curve(rhs));
    if (lhs.identity) return rhs;
    if (rhs.identity) return lhs;

    u64 lambda;
    if (lhs.x == rhs.x) {
        if (lhs.y != rhs.y || lhs.y == 0) return CurvePoint::infinity();  // P + (-P)
        // Tangent slope (3x^2 + a) / 2y.
        u64 num = add_mod(mul_mod(3, mul_mod(lhs.x, lhs.x, p_), p_), a_, p_);
        lambda = mul_mod(num, inv_mod(add_mod(lhs.y, lhs.y, p_), p_), p_);
    } else {
        // Chord slope (y2 - y1) / (x2 - x1).
        u64 num = sub_mod(rhs.y, lhs.y, p_);
        lambda = mul_mod(num, inv_mod(sub_mod(rhs.x, lhs.x, p_), p_), p_);
    }
    u64 x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p_), lhs.x, p_), rhs.x, p_);
    u64 y3 = sub_mod(mul_mod(lambda, sub_mod(lhs.x, x3, p_), p_), lhs.y, p_);
    return CurvePoint::affine(x3, y3);
}

CurvePoint Curve::mul(u64 k, const CurvePoint& pt) const {
    require_on_curve(pt);
    CurvePoint acc = CurvePoint::infinity();
    CurvePoint addend = pt;
    while (k != 0) {
        if (k & 1) acc = add_unchecked(acc, addend);
        k >>= 1;
        if (k != 0) addend = add_unchecked(addend, addend);
    }
    return acc;
}

CurvePoint Curve::map_to_point(u64 t) const {
    if (t >= n_) throw RangeError("map_to_point: plaintext exceeds group order");
    return mul(t, g_);
}

u64 Curve::unmap_point(const CurvePoint& tp, u64 max_plaintext) const {
    require_on_curve(tp);
    UnmapTable table(*this, max_plaintext);
    if (auto t = table.lookup(tp)) return *t;
    throw UnmappablePointError("unmap_point: no plaintext in range maps to this point");
}

std::string Curve::to_record() const {
    std::ostringstream out;
    out << "p=" << p_ << " a=" << a_ << " b=" << b_ << " gx=" << g_.x << " gy=" << g_.y
        << " n=" << n_;
    return out.str();
}

Curve Curve::from_record(const std::string& record) {
    std::istringstream in(record);
    std::unordered_map<std::string, u64> fields;
    std::string token;
    while (in >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("curve record: expected key=value, got '" + token + "'");
        std::string key = token.substr(0, eq);
        std::string value = token.substr(eq + 1);
        if (fields.count(key)) throw ConfigError("curve record: duplicate key '" + key + "'");
        try {
            size_t used = 0;
            u64 parsed = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            fields[key] = parsed;
        } catch (const std::exception&) {
            throw ConfigError("curve record: bad value for '" + key + "'");
        }
    }
    for (const char* key : {"p", "a", "b", "gx", "gy", "n"}) {
        if (!fields.count(key))
            throw ConfigError(std::string("curve record: missing key '") + key + "'");
    }
    if (fields.size() != 6) throw ConfigError("curve record: unexpected extra keys");
    return Curve(fields["p"], fields["a"], fields["b"],
                 CurvePoint::affine(fields["gx"], fields["gy"]), fields["n"]);
}

UnmapTable::UnmapTable(const Curve& curve, u64 max_plaintext)
    : curve_(curve),
      max_plaintext_(std::min(max_plaintext, curve.n() - 1)),
      full_table_(max_plaintext_ < kFullTableLimit) {
    const CurvePoint& g = curve.generator();
    if (full_table_) {
        table_.reserve(static_cast<size_t>(max_plaintext_));
        CurvePoint pt = CurvePoint::infinity();
        for (u64 j = 1; j <= max_plaintext_; ++j) {
            pt = curve_.add_unchecked(pt, g);
            table_.emplace(pt.x, std::make_pair(pt.y, j));  // first writer wins
        }
    } else {
        baby_count_ = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(max_plaintext_) + 1.0)));
        if (baby_count_ == 0) baby_count_ = 1;
        table_.reserve(static_cast<size_t>(baby_count_));
        CurvePoint pt = CurvePoint::infinity();
        for (u64 j = 1; j <= baby_count_; ++j) {
            pt = curve_.add_unchecked(pt, g);
            table_.emplace(pt.x, std::make_pair(pt.y, j));
        }
        giant_step_ = curve_.negate(pt);  // pt = baby_count * G here
    }
}

std::optional<u64> UnmapTable::lookup(const CurvePoint& tp) const {
    const u64 n = curve_.n();
    // The discrete log of tp is unique mod n, so the first structural match
    // decides: either it yields a value within range or no valid value exists.
    auto resolve = [&](u64 candidate) -> std::optional<u64> {
        if (candidate <= max_plaintext_) return candidate;
        return std::nullopt;
    };

    if (full_table_) {
        if (tp.identity) return resolve(0);
        auto it = table_.find(tp.x);
        if (it == table_.end()) return std::nullopt;
        auto [y, j] = it->second;
        return resolve(tp.y == y ? j : n - j);
    }

    const u64 m = baby_count_;
    CurvePoint gamma = tp;
    for (u64 i = 0; i * m <= max_plaintext_; ++i) {
        if (gamma.identity) return resolve((i * m) % n);
        auto it = table_.find(gamma.x);
        if (it != table_.end()) {
            auto [y, j] = it->second;
            if (gamma.y == y) return resolve((i * m + j) % n);
            // gamma = -(j*G): candidate is i*m - j mod n.
            u64 im = (i * m) % n;
            return resolve(im >= j ? im - j : im + n - j);
        }
        gamma = curve_.add_unchecked(gamma, giant_step_);
    }
    return std::nullopt;
}

}  // namespace secagg
