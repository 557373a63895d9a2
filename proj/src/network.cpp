#include "secagg/network.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace secagg {

const char* role_name(NodeRole role) {
    switch (role) {
        case NodeRole::Member: return "member";
        case NodeRole::ClusterAgent: return "cluster-agent";
        case NodeRole::BaseStation: return "base-station";
    }
    return "?";
}

double distance(const Position& a, const Position& b) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

double EnergyModelParams::crossover_m() const {
    return std::sqrt(eps_fs_j_per_bit_m2 / eps_amp_j_per_bit_m4);
}

void EnergyModelParams::validate() const {
    if (em_j_per_bit <= 0.0 || eps_fs_j_per_bit_m2 <= 0.0 || eps_amp_j_per_bit_m4 <= 0.0 ||
        eda_j_per_bit <= 0.0)
        throw DomainError("energy model: all constants must be positive");
}

Topology build_network(u64 node_count, double area_w_m, double area_h_m,
                       double radio_range_m, double initial_energy_j,
                       Position bs_pos, u64 seed) {
    if (node_count == 0) throw ConfigError("build_network: node_count must be at least 1");
    if (area_w_m <= 0.0 || area_h_m <= 0.0)
        throw ConfigError("build_network: area dimensions must be positive");
    if (radio_range_m <= 0.0) throw ConfigError("build_network: radio range must be positive");
    if (initial_energy_j < 0.0) throw ConfigError("build_network: initial energy must be >= 0");

    Topology topo;
    topo.radio_range_m = radio_range_m;
    topo.area_w_m = area_w_m;
    topo.area_h_m = area_h_m;
    topo.nodes.reserve(node_count + 1);

    Rng rng(seed);
    for (u64 id = 0; id < node_count; ++id) {
        NodeState node;
        node.id = id;
        node.pos.x = rng.uniform_real(0.0, area_w_m);
        node.pos.y = rng.uniform_real(0.0, area_h_m);
        node.initial_energy_j = initial_energy_j;
        node.role = NodeRole::Member;
        topo.nodes.push_back(std::move(node));
    }

    NodeState bs;
    bs.id = node_count;
    bs.pos = bs_pos;
    bs.initial_energy_j = initial_energy_j;
    bs.role = NodeRole::BaseStation;
    topo.bs_id = node_count;
    topo.nodes.push_back(std::move(bs));

    for (u64 u = 0; u < topo.nodes.size(); ++u) {
        for (u64 v = u + 1; v < topo.nodes.size(); ++v) {
            if (distance(topo.nodes[u].pos, topo.nodes[v].pos) <= radio_range_m)
                topo.edges.emplace_back(u, v);
        }
    }
    return topo;
}

namespace {

std::vector<u64> alive_sensor_ids(const Topology& topo) {
    std::vector<u64> ids;
    for (const NodeState& node : topo.nodes) {
        if (node.alive && node.role != NodeRole::BaseStation) ids.push_back(node.id);
    }
    return ids;
}

}  // namespace

std::vector<Cluster> cluster_nodes(const Topology& topo, u64 k) {
    std::vector<u64> ids = alive_sensor_ids(topo);
    if (k < 1 || k > ids.size())
        throw DomainError("cluster_nodes: cluster count must be in [1, alive sensor count]");

    // Farthest-point seeding: start from the lowest alive id, then repeatedly
    // take the node farthest from its nearest chosen center (ties -> lowest
    // id). Gives k distinct, spread-out centers with no randomness.
    std::vector<Position> centers;
    centers.push_back(topo.node(ids.front()).pos);
    std::vector<double> nearest(ids.size(), std::numeric_limits<double>::infinity());
    while (centers.size() < k) {
        u64 best = kNoNode;
        double best_dist = -1.0;
        for (size_t i = 0; i < ids.size(); ++i) {
            nearest[i] = std::min(nearest[i], distance(topo.node(ids[i]).pos, centers.back()));
            if (nearest[i] > best_dist) {
                best_dist = nearest[i];
                best = ids[i];
            }
        }
        centers.push_back(topo.node(best).pos);
    }

    std::vector<size_t> assign(ids.size(), 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        // Assign each node to its nearest center; ties -> lowest center index.
        for (size_t i = 0; i < ids.size(); ++i) {
            size_t best_c = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (size_t c = 0; c < centers.size(); ++c) {
                double d = distance(topo.node(ids[i]).pos, centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best_c = c;
                }
            }
            if (assign[i] != best_c) {
                assign[i] = best_c;
                changed = true;
            }
        }
        // Refill any emptied cluster with the node farthest from its own
        // center, taken from a cluster that can spare one (ties -> lowest id).
        std::vector<u64> count(k, 0);
        for (size_t c : assign) ++count[c];
        for (size_t empty = 0; empty < k; ++empty) {
            if (count[empty] != 0) continue;
            size_t donor_i = ids.size();
            double donor_d = -1.0;
            for (size_t i = 0; i < ids.size(); ++i) {
                if (count[assign[i]] < 2) continue;
                double d = distance(topo.node(ids[i]).pos, centers[assign[i]]);
                if (d > donor_d) {
                    donor_d = d;
                    donor_i = i;
                }
            }
            --count[assign[donor_i]];
            assign[donor_i] = empty;
            ++count[empty];
            changed = true;
        }
        if (!changed) break;
        // Recompute centers as member centroids.
        std::vector<double> sx(k, 0.0), sy(k, 0.0);
        for (size_t i = 0; i < ids.size(); ++i) {
            sx[assign[i]] += topo.node(ids[i]).pos.x;
            sy[assign[i]] += topo.node(ids[i]).pos.y;
        }
        for (size_t c = 0; c < k; ++c) {
            double sz = static_cast<double>(count[c]);
            centers[c] = Position{sx[c] / sz, sy[c] / sz};
        }
    }

    std::vector<std::vector<u64>> groups(k);
    for (size_t i = 0; i < ids.size(); ++i) groups[assign[i]].push_back(ids[i]);
    // ids ascending implies each group is already ascending; order clusters by
    // lowest member id so numbering is stable across runs.
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<Cluster> clusters(k);
    for (u64 c = 0; c < k; ++c) {
        clusters[c].cluster_id = c;
        clusters[c].members = std::move(groups[c]);
        clusters[c].atr = "atr-" + std::to_string(c);
    }
    return clusters;
}

u64 select_cluster_agent(const Cluster& cluster, const Topology& topo) {
    std::vector<u64> alive;
    for (u64 id : cluster.members) {
        if (topo.node(id).alive) alive.push_back(id);
    }
    if (alive.empty()) throw DeadClusterError("select_cluster_agent: no alive member");
    if (alive.size() == 1) return alive.front();

    const Position bs_pos = topo.bs().pos;
    size_t m = alive.size();
    std::vector<double> energy(m), dist_bs(m), neighbors(m);
    for (size_t i = 0; i < m; ++i) {
        const NodeState& node = topo.node(alive[i]);
        energy[i] = node.residual_energy_j();
        dist_bs[i] = distance(node.pos, bs_pos);
        u64 close = 0;
        for (u64 other : alive) {
            if (other != alive[i] &&
                distance(node.pos, topo.node(other).pos) <= topo.radio_range_m)
                ++close;
        }
        neighbors[i] = static_cast<double>(close);
    }

    // Min-max normalize each criterion over the cluster; a flat criterion is
    // uninformative and contributes zero to everyone.
    auto norm_term = [](const std::vector<double>& v, size_t i, bool higher_better) {
        auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
        double lo = *lo_it, hi = *hi_it;
        if (hi <= lo) return 0.0;
        double norm = (v[i] - lo) / (hi - lo);
        return higher_better ? norm : 1.0 - norm;
    };

    constexpr double kWeight = 1.0 / 3.0;
    u64 best_id = alive.front();
    double best_score = -1.0;
    for (size_t i = 0; i < m; ++i) {
        double score = kWeight * norm_term(energy, i, true) +
                       kWeight * norm_term(dist_bs, i, false) +
                       kWeight * norm_term(neighbors, i, true);
        if (score > best_score) {  // ties keep the earlier (lower) id
            best_score = score;
            best_id = alive[i];
        }
    }
    return best_id;
}

double tx_energy(const EnergyModelParams& params, double len_bits, double v_m) {
    params.validate();
    if (len_bits < 0.0 || v_m < 0.0) throw DomainError("tx_energy: negative input");
    double electronics = params.em_j_per_bit * len_bits;
    if (v_m < params.crossover_m())
        return electronics + params.eps_fs_j_per_bit_m2 * v_m * v_m * len_bits;
    return electronics + params.eps_amp_j_per_bit_m4 * v_m * v_m * v_m * v_m * len_bits;
}

double rx_energy(const EnergyModelParams& params, double len_bits) {
    params.validate();
    if (len_bits < 0.0) throw DomainError("rx_energy: negative length");
    return params.em_j_per_bit * len_bits;
}

double aggregation_energy(const EnergyModelParams& params, double len_bits, u64 signals) {
    params.validate();
    if (len_bits < 0.0) throw DomainError("aggregation_energy: negative length");
    return params.eda_j_per_bit * len_bits * static_cast<double>(signals);
}

double deduct_energy(NodeState& node, double amount) {
    if (amount < 0.0) throw DomainError("deduct_energy: negative amount");
    if (!node.alive) return 0.0;
    double residual = node.residual_energy_j();
    if (amount >= residual) {
        // Battery exhausted: land residual on exactly zero.
        node.spent_energy_j = node.initial_energy_j;
        node.alive = false;
        return residual;
    }
    node.spent_energy_j += amount;
    return amount;
}

std::unordered_map<u64, std::vector<u64>> generate_routes(const Topology& topo,
                                                          const std::vector<Cluster>& clusters) {
    std::unordered_map<u64, std::vector<u64>> routes;
    for (const Cluster& cluster : clusters) {
        if (cluster.agent == kNoNode)
            throw DomainError("generate_routes: cluster has no elected agent");
        for (u64 id : cluster.members) {
            if (!topo.node(id).alive) continue;
            if (id == cluster.agent)
                routes[id] = {id, topo.bs_id};
            else
                routes[id] = {id, cluster.agent, topo.bs_id};
        }
    }
    return routes;
}

std::string dump_topology(const Topology& topo, const std::vector<Cluster>& clusters) {
    std::unordered_map<u64, u64> cluster_of;
    for (const Cluster& cluster : clusters) {
        for (u64 id : cluster.members) cluster_of[id] = cluster.cluster_id;
    }
    std::ostringstream out;
    out << "# id x y energy role cluster\n";
    for (const NodeState& node : topo.nodes) {
        out << node.id << ' ' << std::fixed << std::setprecision(3) << node.pos.x << ' '
            << node.pos.y << ' ' << std::defaultfloat << std::setprecision(9)
            << node.residual_energy_j() << ' ' << role_name(node.role) << ' ';
        auto it = cluster_of.find(node.id);
        if (it == cluster_of.end())
            out << '-';
        else
            out << it->second;
        out << '\n';
    }
    return out.str();
}

}  // namespace secagg
