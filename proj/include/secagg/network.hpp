#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "secagg/common.hpp"
#include "secagg/errors.hpp"
#include "secagg/rng.hpp"

namespace secagg {

enum class NodeRole { Member, ClusterAgent, BaseStation };

const char* role_name(NodeRole role);  // "member" / "cluster-agent" / "base-station"

struct Position {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Position& a, const Position& b);

// Energy bookkeeping holds the initial budget and the running spend; the
// residual is always their exact difference, so re-summing logged draws
// reproduces it bit for bit.
struct NodeState {
    u64 id = 0;
    Position pos;
    double initial_energy_j = 0.0;
    double spent_energy_j = 0.0;
    NodeRole role = NodeRole::Member;
    bool alive = true;
    u64 seq_counter = 0;            // packets sent; incremented by the protocol
    std::vector<u64> nk_list;       // neighbor-key ids; starts empty
    bool valid = true;

    double residual_energy_j() const { return initial_energy_j - spent_energy_j; }
};

struct Cluster {
    u64 cluster_id = 0;
    std::vector<u64> members;       // ascending node ids; includes the agent
    u64 agent = kNoNode;
    std::string atr;                // opaque cluster attribute tag
};

// First-order radio model constants. The crossover distance is derived, not
// stored, so the two transmit branches agree there by construction.
struct EnergyModelParams {
    double em_j_per_bit = 50e-9;         // electronics, per bit
    double eps_fs_j_per_bit_m2 = 10e-12; // free-space amplifier
    double eps_amp_j_per_bit_m4 = 0.0013e-12;  // multipath amplifier
    double eda_j_per_bit = 5e-9;         // data-fusion cost at the aggregator

    double crossover_m() const;          // sqrt(eps_fs / eps_amp)
    void validate() const;               // all constants must be > 0
};

struct Topology {
    std::vector<NodeState> nodes;   // sensor ids 0..count-1, then the BS
    std::vector<std::pair<u64, u64>> edges;  // sensor pairs within radio range, u < v
    double radio_range_m = 0.0;
    double area_w_m = 0.0;
    double area_h_m = 0.0;
    u64 bs_id = kNoNode;

    NodeState& node(u64 id) { return nodes.at(id); }
    const NodeState& node(u64 id) const { return nodes.at(id); }
    const NodeState& bs() const { return nodes.at(bs_id); }
};

// Uniformly scatters `node_count` sensors over the area (seeded), appends the
// base station at `bs_pos`, and precomputes the in-range edge set.
Topology build_network(u64 node_count, double area_w_m, double area_h_m,
                       double radio_range_m, double initial_energy_j,
                       Position bs_pos, u64 seed);

// Position-based k-partition of alive sensors: k-means with farthest-point
// seeding (first center = lowest alive id), deterministic for a given
// topology. Clusters come back nonempty, ids 0..k-1 by ascending lowest
// member id, members ascending.
std::vector<Cluster> cluster_nodes(const Topology& topo, u64 k);

// Elects the alive member maximizing equal-weighted min-max-normalized
// criteria: residual energy (higher better), distance to BS (lower better),
// alive in-cluster neighbors within radio range (higher better). A criterion
// that is constant across the cluster contributes nothing; ties go to the
// lowest id.
u64 select_cluster_agent(const Cluster& cluster, const Topology& topo);

// Radio costs in joules. Transmit switches amplifier regime at crossover_m().
double tx_energy(const EnergyModelParams& params, double len_bits, double v_m);
double rx_energy(const EnergyModelParams& params, double len_bits);
double aggregation_energy(const EnergyModelParams& params, double len_bits, u64 signals);

// Draws up to `amount` from the node, marking it dead at zero. Returns the
// energy actually drawn (less than `amount` only when the battery clamps).
double deduct_energy(NodeState& node, double amount);

// Two-tier routes: member -> its agent -> BS, agent -> BS. Keyed by node id,
// for every alive sensor.
std::unordered_map<u64, std::vector<u64>> generate_routes(const Topology& topo,
                                                          const std::vector<Cluster>& clusters);

// Debug/golden dump: "# id x y energy role cluster" header then one line per
// node in id order; cluster is "-" for the BS and unclustered nodes.
std::string dump_topology(const Topology& topo, const std::vector<Cluster>& clusters);

}  // namespace secagg
