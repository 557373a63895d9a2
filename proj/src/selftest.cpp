#include "secagg/selftest.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "secagg/config.hpp"
#include "secagg/crypto.hpp"
#include "secagg/curve.hpp"
#include "secagg/digest.hpp"
#include "secagg/errors.hpp"
#include "secagg/network.hpp"
#include "secagg/protocol.hpp"

namespace secagg {
namespace {

struct Reporter {
    std::ostream& out;
    int failures = 0;

    void check(bool ok, const std::string& name) {
        out << (ok ? "ok   - " : "FAIL - ") << name << "\n";
        if (!ok) ++failures;
    }
};

// Every point of the tiny group, as scalar multiples of the generator.
std::vector<CurvePoint> enumerate_group(const Curve& curve) {
    std::vector<CurvePoint> pts;
    for (u64 j = 0; j < curve.n(); ++j) pts.push_back(curve.mul(j, curve.generator()));
    return pts;
}

void check_group_laws(Reporter& rep, const Curve& curve) {
    const auto pts = enumerate_group(curve);
    const u64 n = curve.n();

    bool closure = true;
    for (const auto& p : pts)
        for (const auto& q : pts) {
            const CurvePoint s = curve.add(p, q);
            if (!s.identity && !curve.on_curve(s)) closure = false;
        }
    rep.check(closure, "group closure (all pairwise sums on curve)");

    bool identity_law = true;
    for (const auto& p : pts)
        if (!(curve.add(p, CurvePoint::infinity()) == p) ||
            !(curve.add(CurvePoint::infinity(), p) == p))
            identity_law = false;
    rep.check(identity_law, "identity element neutral on both sides");

    bool inverse_law = true;
    for (const auto& p : pts)
        if (!curve.add(p, curve.negate(p)).identity) inverse_law = false;
    rep.check(inverse_law, "every point cancels with its negation");

    bool commutative = true;
    for (const auto& p : pts)
        for (const auto& q : pts)
            if (!(curve.add(p, q) == curve.add(q, p))) commutative = false;
    rep.check(commutative, "addition commutes");

    bool associative = true;
    for (const auto& p : pts)
        for (const auto& q : pts)
            for (const auto& r : pts)
                if (!(curve.add(curve.add(p, q), r) == curve.add(p, curve.add(q, r))))
                    associative = false;
    rep.check(associative, "addition associates");

    bool scalar_matches = true;
    CurvePoint acc = CurvePoint::infinity();
    for (u64 j = 0; j < n; ++j) {
        if (!(curve.mul(j, curve.generator()) == acc)) scalar_matches = false;
        acc = curve.add(acc, curve.generator());
    }
    rep.check(scalar_matches, "scalar multiply equals repeated addition");

    rep.check(curve.mul(n, curve.generator()).identity,
              "generator times group order is the identity");
}

void check_mapping(Reporter& rep, const Curve& curve) {
    const u64 n = curve.n();
    bool roundtrip = true;
    for (u64 t = 0; t < n; ++t)
        if (curve.unmap_point(curve.map_to_point(t), n - 1) != t) roundtrip = false;
    rep.check(roundtrip, "value-to-point mapping inverts for every residue");

    bool rejects = false;
    try {
        curve.map_to_point(n);
    } catch (const RangeError&) {
        rejects = true;
    }
    rep.check(rejects, "mapping rejects values past the group order");
}

void check_encryption(Reporter& rep, const Curve& curve) {
    const u64 n = curve.n();
    const u64 sk = 7;
    const CurvePoint pk = curve.mul(sk, curve.generator());

    bool roundtrip = true;
    for (u64 pt = 0; pt < n; ++pt)
        for (u64 k = 1; k < n; ++k)
            if (decrypt(curve, sk, encrypt(curve, pk, pt, k), n - 1) != pt)
                roundtrip = false;
    rep.check(roundtrip, "encrypt/decrypt roundtrips for every value and nonce");

    bool homomorphic = true;
    for (u64 a = 0; a < n; ++a)
        for (u64 b = 0; a + b < n; ++b) {
            const Ciphertext ca = encrypt(curve, pk, a, 3);
            const Ciphertext cb = encrypt(curve, pk, b, 5);
            if (decrypt(curve, sk, ct_add(curve, ca, cb), n - 1) != a + b)
                homomorphic = false;
        }
    rep.check(homomorphic, "ciphertext sums decrypt to plaintext sums");

    bool rejects_zero_nonce = false;
    try {
        encrypt(curve, pk, 1, 0);
    } catch (const InvalidKeyError&) {
        rejects_zero_nonce = true;
    }
    rep.check(rejects_zero_nonce, "encryption rejects a degenerate nonce");
}

void check_signatures(Reporter& rep, const Curve& curve) {
    const u64 n = curve.n();
    const u64 master = 11;
    Rng rng(42);
    const NodeCredentials cred = init_node(curve, master, 3, rng);

    bool honest_ok = true;
    for (int i = 0; i < 20; ++i) {
        const IdentSignature sig = sign_identity(curve, cred.s1, cred.pk, rng);
        if (!verify_identity(curve, cred.pk, sig)) honest_ok = false;
    }
    rep.check(honest_ok, "honest identity proofs verify");

    // Exhaust every (ct1, ct2) pair for a fixed key: the verifier must accept
    // exactly the pairs whose recombined commitment hashes back to ct1. The
    // acceptance set is recomputed here from public data only.
    bool verifier_tight = true;
    const CurvePoint pk = cred.pk;
    for (u64 c1 = 0; c1 < n; ++c1)
        for (u64 c2 = 0; c2 < n; ++c2) {
            const CurvePoint r = curve.add(
                curve.add(curve.mul(c2, curve.generator()), curve.mul(c1, pk)), pk);
            const bool expected = hash_point_pair_to_scalar(pk, r, n) == c1;
            if (verify_identity(curve, pk, IdentSignature{r, c1, c2}) != expected)
                verifier_tight = false;
        }
    rep.check(verifier_tight, "verifier acceptance set matches the hash equation");

    IdentSignature bad = sign_identity(curve, cred.s1, cred.pk, rng);
    bad.ct2 = (bad.ct2 + 1) % n;
    rep.check(!verify_identity(curve, cred.pk, bad),
              "perturbed response scalar fails verification");

    IdentSignature oob = sign_identity(curve, cred.s1, cred.pk, rng);
    oob.ct1 += n;
    rep.check(!verify_identity(curve, cred.pk, oob),
              "out-of-range challenge fails verification");

    rep.check(bs_register(curve, master, cred),
              "freshly provisioned credentials pass registration");
}

void check_mac(Reporter& rep) {
    MacKey key{};
    for (std::size_t i = 0; i < key.size(); ++i) key[i] = static_cast<u8>(i + 1);
    const Bytes msg = {1, 2, 3, 4};
    const MacTag tag = mac_sign(key, msg);

    rep.check(mac_verify(key, msg, tag), "tag verifies under its key");

    Bytes altered = msg;
    altered[0] ^= 1;
    rep.check(!mac_verify(key, altered, tag), "tag rejects an altered message");

    MacKey other = key;
    other[0] ^= 1;
    rep.check(!mac_verify(other, msg, tag), "tag rejects the wrong key");
}

void check_energy_model(Reporter& rep) {
    EnergyModelParams params;
    const double v0 = params.crossover_m();
    const double lo = tx_energy(params, 1000, v0 * (1.0 - 1e-9));
    const double hi = tx_energy(params, 1000, v0 * (1.0 + 1e-9));
    rep.check(std::fabs(hi - lo) / hi < 1e-6,
              "transmit cost continuous across the range crossover");

    bool monotone = true;
    double prev = 0.0;
    for (double v = 0.0; v <= 200.0; v += 0.5) {
        const double e = tx_energy(params, 1000, v);
        if (e < prev) monotone = false;
        prev = e;
    }
    rep.check(monotone, "transmit cost non-decreasing in distance");
}

void check_simulation(Reporter& rep) {
    SimConfig cfg;
    cfg.curve_spec = "tiny";
    cfg.node_count = 6;
    cfg.cluster_count = 2;
    cfg.rounds = 4;
    cfg.max_reading = 1;  // 6 nodes * reading 1 stays under the tiny group order
    cfg.initial_energy_j = 0.5;
    cfg.seed = 9;

    const SimRun a = run_simulation(cfg);
    const SimRun b = run_simulation(cfg);

    rep.check(a.rounds_survived == cfg.rounds, "tiny-network run survives all rounds");

    bool truth = true;
    for (const auto& r : a.rounds)
        if (!r.ground_truth_ok) truth = false;
    rep.check(truth, "every accepted aggregate matches its contributors");

    bool deterministic = a.rounds.size() == b.rounds.size() &&
                         a.radio_energy_j == b.radio_energy_j;
    if (deterministic)
        for (std::size_t i = 0; i < a.rounds.size(); ++i)
            if (format_round_result(a.rounds[i]) != format_round_result(b.rounds[i]))
                deterministic = false;
    rep.check(deterministic, "same seed reproduces the run bit for bit");

    double resummed = 0.0;
    for (double e : a.energy_events) resummed += e;
    rep.check(resummed == a.radio_energy_j, "energy ledger re-sums to the run total");
}

}  // namespace

int run_selftest(std::ostream& out) {
    Reporter rep{out};
    const Curve tiny = Curve::from_record(curve_preset_record("tiny"));

    check_group_laws(rep, tiny);
    check_mapping(rep, tiny);
    check_encryption(rep, tiny);
    check_signatures(rep, tiny);
    check_mac(rep);
    check_energy_model(rep);
    check_simulation(rep);

    out << (rep.failures == 0 ? "selftest: all checks passed"
                              : "selftest: FAILURES detected")
        << "\n";
    return rep.failures;
}

}  // namespace secagg
