#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "secagg/config.hpp"
#include "secagg/crypto.hpp"
#include "secagg/network.hpp"

namespace secagg {

enum class RejectReason { Hash, Mac, Signature, StaleTimestamp };
const char* reject_reason_name(RejectReason reason);

// The wire unit a member sends its agent. Canonical byte layout (all fields
// 8-byte big-endian, points as x||y with identity encoded as sixteen 0xFF):
//   [0,56)    sender | round | C.x | C.y | CT.x | CT.y | timestamp
//   [56,88)   digest over the serialized ciphertext (bytes [16,48))
//   [88,120)  MAC over bytes [0,56) || digest, under the sender's key
//   [120,152) identity signature: r (16) | ct1 (8) | ct2 (8)
struct DataPacket {
    u64 sender = 0;
    u64 round = 0;
    Ciphertext ciphertext;
    Digest digest{};
    MacTag mac{};
    u64 timestamp = 0;
    IdentSignature signature;
};

inline constexpr std::size_t kPacketBytes = 152;

Bytes serialize_ciphertext(const Ciphertext& ct);        // 32 bytes
Bytes serialize_packet_region(const DataPacket& p);      // the 56-byte canonical region
Bytes serialize_packet(const DataPacket& p);             // full 152-byte wire form
DataPacket parse_packet(const Bytes& wire);              // exact inverse; checks length only

// What a cluster agent hands the base station each round. per_node carries the
// validated member ciphertexts when the cache feed is per-node; it is empty in
// aggregate-only mode. agent_mac covers the serialized report region.
struct AggregateReport {
    u64 cluster_id = 0;
    u64 round = 0;
    Ciphertext aggregate;
    std::vector<u64> contributor_ids;                       // ascending
    std::vector<std::pair<u64, Ciphertext>> per_node;       // ascending by id
    MacTag agent_mac{};
    IdentSignature agent_signature;
};

Bytes serialize_report_region(const AggregateReport& r);
u64 report_wire_bytes(const AggregateReport& r);            // region + MAC + signature

// Bounded store of validated plaintexts at the BS, keyed (round, id). An
// entry written in round r0 stays usable through round r0 + depth.
class BsCache {
public:
    explicit BsCache(u64 depth) : depth_(depth) {}

    void put(u64 round, u64 id, u64 reading) { entries_[{round, id}] = reading; }

    // Most recent entry for id in rounds [current-depth, current-1].
    std::optional<std::pair<u64, u64>> latest(u64 id, u64 current_round) const;  // (reading, round)

    void prune(u64 current_round);  // drop entries no longer usable next round
    std::size_t size() const { return entries_.size(); }

private:
    u64 depth_;
    std::map<std::pair<u64, u64>, u64> entries_;
};

struct SensedData {
    u64 plaintext = 0;   // ground-truth sum of this node's readings this round
    DataPacket packet;
};

// Draws `readings` values in [0, max_reading] from the node's stream, encrypts
// each under the BS key with a fresh ephemeral, folds them into one
// ciphertext, and wraps it with digest, MAC, timestamp, and identity proof.
SensedData sense_and_encrypt(const Curve& curve, const CurvePoint& bs_pk,
                             const NodeCredentials& creds, Rng& node_rng, u64 round,
                             u64 max_reading, u64 readings);

// Full packet check in fixed order: digest, MAC, signature, timestamp.
// nullopt = accept; otherwise the first failing check.
std::optional<RejectReason> ca_validate(const Curve& curve, const DataPacket& packet,
                                        u64 expected_round, const CurvePoint& sender_pk,
                                        const MacKey& sender_mac_key);

// Folds the validated packets (ascending sender) into one report, MAC'd and
// signed by the agent. Empty input aggregates to (identity, identity) = E(0).
AggregateReport ca_aggregate(const Curve& curve, const std::vector<DataPacket>& validated,
                             u64 cluster_id, u64 round, const NodeCredentials& agent_creds,
                             Rng& agent_rng, CacheFeed feed);

struct BsDelivery {
    u64 aggregate_pt = 0;
    std::map<u64, u64> per_node_pt;   // decrypted member readings (per-node feed)
};

// Validates MAC, agent identity, and round, then decrypts. nullopt = report
// rejected (its contributors become recovery candidates). An aggregate that
// decrypts to no in-range value throws CorruptCiphertextError.
std::optional<BsDelivery> bs_receive(const Curve& curve, const UnmapTable& table, u64 bs_sk,
                                     const AggregateReport& report, u64 expected_round,
                                     const CurvePoint& agent_pk, const MacKey& agent_mac_key);

struct RecoveryOutcome {
    std::map<u64, std::pair<u64, u64>> recovered;  // id -> (reading, source round)
    std::vector<u64> missing;                      // nothing cached in the window
};

// For every expected id absent from `received`, pulls the freshest cached
// reading still inside the cache window.
RecoveryOutcome bs_recover(const std::vector<u64>& expected, const std::set<u64>& received,
                           const BsCache& cache, u64 round);

// Nearest alive agent of another cluster, measured from the centroid of this
// cluster's alive members; ties go to the lowest agent id. Throws
// NetworkDeadError when no alive agent exists anywhere.
u64 relay_fallback(const Cluster& cluster, const std::vector<Cluster>& clusters,
                   const Topology& topo);

struct ClusterRoundStats {
    u64 cluster_id = 0;
    u64 agent = kNoNode;
    std::vector<u64> accepted;                              // senders in the report
    std::vector<std::pair<u64, RejectReason>> rejected;
    std::vector<u64> dropped;                               // sensed but never validated
    bool report_delivered = false;                          // report accepted at the BS
    std::optional<u64> aggregate_pt;                        // set iff report_delivered
};

struct RoundResult {
    u64 round = 0;
    std::vector<ClusterRoundStats> clusters;
    std::map<u64, u64> readings;          // ground truth for every node that sensed
    std::vector<u64> tampered;            // senders whose packet was tampered in transit
    std::map<u64, std::pair<u64, u64>> recovered;           // id -> (reading, source round)
    std::vector<u64> missing;             // expected, absent, and not recoverable
    std::map<u64, std::pair<u64, u64>> recovered_clusters;  // aggregate-only feed
    std::vector<u64> missing_clusters;
    std::map<u64, double> energy_spent_j;  // per node, this round only
    u64 bs_messages = 0;                   // reports that reached the BS
    u64 total_aggregate_pt = 0;            // sum of accepted cluster aggregates
    bool ground_truth_ok = true;  // every accepted aggregate == sum of its contributors
    double network_residual_j = 0.0;       // sensors' residual after the round
};

std::string format_round_result(const RoundResult& r);

struct PhaseTimers {
    double encrypt_s = 0.0;
    double decrypt_s = 0.0;
    double aggregate_s = 0.0;
    double overall_s = 0.0;
};

/// Registry entry the BS shares with validators: who may sign and MAC as id.
struct NodePublicRecord {
    CurvePoint pk;
    MacKey mac_key{};
};

// Whole-simulation state. Members are public so harnesses can stage
// scenarios (forced drops, cache inspection) directly.
struct SimState {
    explicit SimState(const SimConfig& cfg);

    SimConfig cfg;
    Curve curve;
    UnmapTable table;            // sized for the largest possible aggregate
    u64 master_secret = 0;
    KeyPair bs_keys;
    Topology topo;
    std::vector<Cluster> clusters;
    std::vector<NodeCredentials> creds;      // indexed by sensor id
    std::map<u64, NodePublicRecord> registry;
    std::vector<Rng> node_rng;               // per-sensor sense/sign streams
    Rng fault_rng;
    BsCache cache;               // per-node readings (per-node feed)
    BsCache cluster_cache;       // cluster aggregates (aggregate-only feed)
    bool needs_recluster = false;

    double radio_energy_j = 0.0;             // accumulated in event order
    std::vector<double> energy_events;       // every deduction, in order
    PhaseTimers timers;
};

SimState init_simulation(const SimConfig& cfg);

// One full protocol cycle; see the module contract for the phase order.
// Throws NetworkDeadError when the network cannot carry the round.
RoundResult run_round(SimState& state, u64 round);

struct SimRun {
    SimConfig cfg;
    std::vector<RoundResult> rounds;
    u64 rounds_survived = 0;
    double radio_energy_j = 0.0;
    std::vector<double> energy_events;
    PhaseTimers timers;
};

// Runs cfg.rounds rounds or stops early when the network dies.
SimRun run_simulation(const SimConfig& cfg);

}  // namespace secagg
