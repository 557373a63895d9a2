#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>

#include "secagg/curve.hpp"
#include "secagg/network.hpp"

namespace secagg {

enum class TamperKind { FlipCiphertext, FlipMac, ForgeSignature };
enum class CacheFeed { PerNode, AggregateOnly };

const char* tamper_kind_name(TamperKind kind);
const char* cache_feed_name(CacheFeed feed);

// In-transit fault injection: random drops and byte tampering, driven by a
// stream independent of all protocol randomness. forced_drops lists
// (round, node) pairs that drop unconditionally — the recovery test harness
// uses it to stage precise loss patterns.
struct FaultModel {
    double drop_prob = 0.0;
    double tamper_prob = 0.0;
    u64 seed = 0;  // filled in by the engine, derived from the run seed
    TamperKind tamper_kind = TamperKind::FlipCiphertext;
    std::set<std::pair<u64, u64>> forced_drops;
};

// One experiment definition. Defaults give a 20-node, 4-cluster network on a
// 100 m square with the stock radio constants and no faults.
struct SimConfig {
    u64 node_count = 20;
    u64 cluster_count = 4;
    u64 rounds = 10;
    double area_w_m = 100.0;
    double area_h_m = 100.0;
    double radio_range_m = 30.0;
    double initial_energy_j = 0.5;
    u64 max_reading = 100;
    double payload_kb = 0.0;  // kilobits of sensed data per node per round; 0 = one reading
    EnergyModelParams energy;
    std::string curve_spec = "desk";  // "tiny", "desk", or a full curve record
    u64 seed = 1;
    FaultModel fault;
    u64 cache_rounds = 3;
    CacheFeed cache_feed = CacheFeed::PerNode;
    double cpu_voltage_v = 3.0;
    double cpu_current_a = 0.008;
    std::optional<double> bs_x;  // default: area center
    std::optional<double> bs_y;

    Position bs_position() const;
    u64 reading_bits() const;          // bits to encode one reading in [0, max_reading]
    u64 readings_per_packet() const;   // payload split into independent readings
    u64 max_aggregate() const;         // largest possible network-wide plaintext sum
    Curve make_curve() const;
    void validate() const;             // throws ConfigError on any bad field

    // Full key=value listing in parse_config_text format (lossless roundtrip),
    // with the digest algorithm recorded as a comment for run comparability.
    std::string to_text() const;
};

// Flat "key = value" lines; '#' starts a comment; unknown or duplicate keys
// rejected. Absent keys keep their defaults.
SimConfig parse_config_text(const std::string& text);
SimConfig load_config_file(const std::string& path);

// Built-in curve presets ("tiny": fully enumerable order-19 group for
// exhaustive tests; "desk": prime order near 2^31 for realistic runs).
std::string curve_preset_record(const std::string& name);

}  // namespace secagg
