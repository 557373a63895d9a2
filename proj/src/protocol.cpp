#include "secagg/protocol.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

namespace secagg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CurvePoint read_point_be(const u8* p) {
    bool identity = true;
    for (int i = 0; i < 16; ++i) {
        if (p[i] != 0xFF) {
            identity = false;
            break;
        }
    }
    if (identity) return CurvePoint::infinity();
    return CurvePoint::affine(read_u64_be(p), read_u64_be(p + 8));
}

constexpr std::size_t kSignatureBytes = 32;  // r (16) + ct1 (8) + ct2 (8)

void append_signature_be(Bytes& out, const IdentSignature& sig) {
    append_point_be(out, sig.r);
    append_u64_be(out, sig.ct1);
    append_u64_be(out, sig.ct2);
}

}  // namespace

const char* reject_reason_name(RejectReason reason) {
    switch (reason) {
        case RejectReason::Hash: return "hash";
        case RejectReason::Mac: return "mac";
        case RejectReason::Signature: return "signature";
        case RejectReason::StaleTimestamp: return "stale-timestamp";
    }
    return "?";
}

Bytes serialize_ciphertext(const Ciphertext& ct) {
    Bytes out;
    out.reserve(32);
    append_point_be(out, ct.c);
    append_point_be(out, ct.ct);
    return out;
}

Bytes serialize_packet_region(const DataPacket& p) {
    Bytes out;
    out.reserve(56);
    append_u64_be(out, p.sender);
    append_u64_be(out, p.round);
    append_point_be(out, p.ciphertext.c);
    append_point_be(out, p.ciphertext.ct);
    append_u64_be(out, p.timestamp);
    return out;
}

Bytes serialize_packet(const DataPacket& p) {
    Bytes out = serialize_packet_region(p);
    out.insert(out.end(), p.digest.begin(), p.digest.end());
    out.insert(out.end(), p.mac.begin(), p.mac.end());
    append_signature_be(out, p.signature);
    return out;
}

DataPacket parse_packet(const Bytes& wire) {
    if (wire.size() != kPacketBytes)
        throw DomainError("parse_packet: wire length must be " + std::to_string(kPacketBytes));
    const u8* b = wire.data();
    DataPacket p;
    p.sender = read_u64_be(b);
    p.round = read_u64_be(b + 8);
    p.ciphertext.c = read_point_be(b + 16);
    p.ciphertext.ct = read_point_be(b + 32);
    p.timestamp = read_u64_be(b + 48);
    std::copy(b + 56, b + 88, p.digest.begin());
    std::copy(b + 88, b + 120, p.mac.begin());
    p.signature.r = read_point_be(b + 120);
    p.signature.ct1 = read_u64_be(b + 136);
    p.signature.ct2 = read_u64_be(b + 144);
    return p;
}

Bytes serialize_report_region(const AggregateReport& r) {
    Bytes out;
    append_u64_be(out, r.cluster_id);
    append_u64_be(out, r.round);
    append_point_be(out, r.aggregate.c);
    append_point_be(out, r.aggregate.ct);
    append_u64_be(out, r.contributor_ids.size());
    for (u64 id : r.contributor_ids) append_u64_be(out, id);
    append_u64_be(out, r.per_node.size());
    for (const auto& [id, ct] : r.per_node) {
        append_u64_be(out, id);
        append_point_be(out, ct.c);
        append_point_be(out, ct.ct);
    }
    return out;
}

u64 report_wire_bytes(const AggregateReport& r) {
    return serialize_report_region(r).size() + kDigestBytes + kSignatureBytes;
}

std::optional<std::pair<u64, u64>> BsCache::latest(u64 id, u64 current_round) const {
    for (u64 back = 1; back <= depth_ && back <= current_round; ++back) {
        u64 r0 = current_round - back;
        auto it = entries_.find({r0, id});
        if (it != entries_.end()) return std::make_pair(it->second, r0);
    }
    return std::nullopt;
}

void BsCache::prune(u64 current_round) {
    if (current_round + 1 <= depth_) return;
    u64 min_keep = current_round + 1 - depth_;  // still inside the window next round
    entries_.erase(entries_.begin(), entries_.lower_bound({min_keep, 0}));
}

SensedData sense_and_encrypt(const Curve& curve, const CurvePoint& bs_pk,
                             const NodeCredentials& creds, Rng& node_rng, u64 round,
                             u64 max_reading, u64 readings) {
    if (readings == 0) throw DomainError("sense_and_encrypt: need at least one reading");
    SensedData out;
    Ciphertext folded;
    for (u64 i = 0; i < readings; ++i) {
        u64 reading = node_rng.uniform(0, max_reading);
        out.plaintext += reading;
        u64 k = node_rng.uniform(1, curve.n() - 1);
        Ciphertext ct = encrypt(curve, bs_pk, reading, k);
        folded = (i == 0) ? ct : ct_add(curve, folded, ct);
    }
    DataPacket& p = out.packet;
    p.sender = creds.node_id;
    p.round = round;
    p.ciphertext = folded;
    p.timestamp = round;
    p.digest = hash_digest(serialize_ciphertext(folded));
    Bytes authed = serialize_packet_region(p);
    authed.insert(authed.end(), p.digest.begin(), p.digest.end());
    p.mac = mac_sign(creds.mac_key, authed);
    p.signature = sign_identity(curve, creds.s1, creds.pk, node_rng);
    return out;
}

std::optional<RejectReason> ca_validate(const Curve& curve, const DataPacket& packet,
                                        u64 expected_round, const CurvePoint& sender_pk,
                                        const MacKey& sender_mac_key) {
    if (hash_digest(serialize_ciphertext(packet.ciphertext)) != packet.digest)
        return RejectReason::Hash;
    Bytes authed = serialize_packet_region(packet);
    authed.insert(authed.end(), packet.digest.begin(), packet.digest.end());
    if (!mac_verify(sender_mac_key, authed, packet.mac)) return RejectReason::Mac;
    if (!verify_identity(curve, sender_pk, packet.signature)) return RejectReason::Signature;
    if (packet.round != expected_round || packet.timestamp != expected_round)
        return RejectReason::StaleTimestamp;
    return std::nullopt;
}

AggregateReport ca_aggregate(const Curve& curve, const std::vector<DataPacket>& validated,
                             u64 cluster_id, u64 round, const NodeCredentials& agent_creds,
                             Rng& agent_rng, CacheFeed feed) {
    std::vector<const DataPacket*> ordered;
    ordered.reserve(validated.size());
    for (const DataPacket& p : validated) ordered.push_back(&p);
    std::sort(ordered.begin(), ordered.end(),
              [](const DataPacket* a, const DataPacket* b) { return a->sender < b->sender; });

    AggregateReport rep;
    rep.cluster_id = cluster_id;
    rep.round = round;
    rep.aggregate = Ciphertext{CurvePoint::infinity(), CurvePoint::infinity()};  // E(0)
    for (const DataPacket* p : ordered) {
        rep.aggregate = ct_add(curve, rep.aggregate, p->ciphertext);
        rep.contributor_ids.push_back(p->sender);
        if (feed == CacheFeed::PerNode) rep.per_node.emplace_back(p->sender, p->ciphertext);
    }
    rep.agent_mac = mac_sign(agent_creds.mac_key, serialize_report_region(rep));
    rep.agent_signature = sign_identity(curve, agent_creds.s1, agent_creds.pk, agent_rng);
    return rep;
}

std::optional<BsDelivery> bs_receive(const Curve& curve, const UnmapTable& table, u64 bs_sk,
                                     const AggregateReport& report, u64 expected_round,
                                     const CurvePoint& agent_pk, const MacKey& agent_mac_key) {
    if (!mac_verify(agent_mac_key, serialize_report_region(report), report.agent_mac))
        return std::nullopt;
    if (!verify_identity(curve, agent_pk, report.agent_signature)) return std::nullopt;
    if (report.round != expected_round) return std::nullopt;

    BsDelivery out;
    out.aggregate_pt = decrypt(curve, bs_sk, report.aggregate, table);
    for (const auto& [id, ct] : report.per_node) out.per_node_pt[id] = decrypt(curve, bs_sk, ct, table);
    return out;
}

RecoveryOutcome bs_recover(const std::vector<u64>& expected, const std::set<u64>& received,
                           const BsCache& cache, u64 round) {
    RecoveryOutcome out;
    for (u64 id : expected) {
        if (received.count(id)) continue;
        if (auto hit = cache.latest(id, round))
            out.recovered[id] = *hit;
        else
            out.missing.push_back(id);
    }
    return out;
}

u64 relay_fallback(const Cluster& cluster, const std::vector<Cluster>& clusters,
                   const Topology& topo) {
    Position centroid{0.0, 0.0};
    u64 count = 0;
    for (u64 id : cluster.members) {
        if (!topo.node(id).alive) continue;
        centroid.x += topo.node(id).pos.x;
        centroid.y += topo.node(id).pos.y;
        ++count;
    }
    if (count == 0) {
        for (u64 id : cluster.members) {
            centroid.x += topo.node(id).pos.x;
            centroid.y += topo.node(id).pos.y;
        }
        count = cluster.members.size();
    }
    centroid.x /= static_cast<double>(count);
    centroid.y /= static_cast<double>(count);

    u64 best = kNoNode;
    double best_d = 0.0;
    for (const Cluster& other : clusters) {
        if (other.cluster_id == cluster.cluster_id) continue;
        if (other.agent == kNoNode || !topo.node(other.agent).alive) continue;
        double d = distance(centroid, topo.node(other.agent).pos);
        if (best == kNoNode || d < best_d || (d == best_d && other.agent < best)) {
            best = other.agent;
            best_d = d;
        }
    }
    if (best == kNoNode)
        throw NetworkDeadError("relay_fallback: no alive cluster agent remains");
    return best;
}

namespace {

u64 count_alive_sensors(const Topology& topo) {
    u64 n = 0;
    for (const NodeState& node : topo.nodes) {
        if (node.alive && node.role != NodeRole::BaseStation) ++n;
    }
    return n;
}

void log_draw(SimState& s, RoundResult& r, u64 node, double draw) {
    s.radio_energy_j += draw;
    s.energy_events.push_back(draw);
    r.energy_spent_j[node] += draw;
}

void tamper_wire(Bytes& wire, TamperKind kind, Rng& rng) {
    // Byte windows follow the packet layout in the DataPacket comment.
    u64 lo = 0, hi = 0;
    switch (kind) {
        case TamperKind::FlipCiphertext: lo = 16; hi = 48; break;
        case TamperKind::FlipMac: lo = 88; hi = 120; break;
        case TamperKind::ForgeSignature: lo = 120; hi = 152; break;
    }
    u64 byte = rng.uniform(lo, hi - 1);
    u64 bit = rng.uniform(0, 7);
    wire.at(byte) ^= static_cast<u8>(1u << bit);
}

}  // namespace

SimState::SimState(const SimConfig& c)
    : cfg(c),
      curve((cfg.validate(), cfg.make_curve())),
      table(curve, cfg.max_aggregate()),
      fault_rng(derive_seed(cfg.seed, "fault")),
      cache(cfg.cache_rounds),
      cluster_cache(cfg.cache_rounds) {
    cfg.fault.seed = derive_seed(cfg.seed, "fault");

    Rng provision(derive_seed(cfg.seed, "provision"));
    master_secret = provision.uniform(1, curve.n() - 1);
    bs_keys = keygen(curve, provision);

    topo = build_network(cfg.node_count, cfg.area_w_m, cfg.area_h_m, cfg.radio_range_m,
                         cfg.initial_energy_j, cfg.bs_position(),
                         derive_seed(cfg.seed, "topology"));

    creds.reserve(cfg.node_count);
    node_rng.reserve(cfg.node_count);
    for (u64 id = 0; id < cfg.node_count; ++id) {
        NodeCredentials nc = init_node(curve, master_secret, id, provision);
        if (!bs_register(curve, master_secret, nc))
            throw Error("node registration failed for id " + std::to_string(id));
        registry[id] = NodePublicRecord{nc.pk, nc.mac_key};
        creds.push_back(std::move(nc));
        node_rng.emplace_back(derive_seed(cfg.seed, "node-" + std::to_string(id)));
    }

    clusters = cluster_nodes(topo, cfg.cluster_count);
}

SimState init_simulation(const SimConfig& cfg) { return SimState(cfg); }

RoundResult run_round(SimState& s, u64 round) {
    const SimConfig& cfg = s.cfg;
    const double packet_bits = static_cast<double>(kPacketBytes) * 8.0;
    RoundResult result;
    result.round = round;

    // Phase 1: membership upkeep and per-round agent election.
    u64 alive = count_alive_sensors(s.topo);
    if (alive == 0) throw NetworkDeadError("run_round: every sensor is dead");
    bool any_cluster_dead = false;
    for (const Cluster& cl : s.clusters) {
        bool has_alive = std::any_of(cl.members.begin(), cl.members.end(),
                                     [&](u64 id) { return s.topo.node(id).alive; });
        if (!has_alive) any_cluster_dead = true;
    }
    if (s.needs_recluster || any_cluster_dead) {
        s.clusters = cluster_nodes(s.topo, std::min(cfg.cluster_count, alive));
        s.needs_recluster = false;
    }
    for (NodeState& node : s.topo.nodes) {
        if (node.role == NodeRole::ClusterAgent) node.role = NodeRole::Member;
    }
    for (Cluster& cl : s.clusters) {
        cl.agent = select_cluster_agent(cl, s.topo);
        s.topo.node(cl.agent).role = NodeRole::ClusterAgent;
    }
    result.clusters.resize(s.clusters.size());
    for (size_t i = 0; i < s.clusters.size(); ++i) {
        result.clusters[i].cluster_id = s.clusters[i].cluster_id;
        result.clusters[i].agent = s.clusters[i].agent;
    }

    // Phase 2: sensing + encryption at every alive member (timed).
    struct InTransit {
        u64 sender;
        size_t cluster_idx;
        Bytes wire;
        bool dropped = false;
        bool tampered = false;
    };
    std::vector<InTransit> transit;
    auto t_encrypt = Clock::now();
    for (size_t ci = 0; ci < s.clusters.size(); ++ci) {
        for (u64 id : s.clusters[ci].members) {
            if (!s.topo.node(id).alive) continue;
            SensedData sd = sense_and_encrypt(s.curve, s.bs_keys.pk, s.creds[id], s.node_rng[id],
                                              round, cfg.max_reading, cfg.readings_per_packet());
            result.readings[id] = sd.plaintext;
            transit.push_back(InTransit{id, ci, serialize_packet(sd.packet)});
        }
    }
    s.timers.encrypt_s += seconds_since(t_encrypt);

    // Phase 3: in-transit fault injection on the serialized bytes.
    for (InTransit& t : transit) {
        if (cfg.fault.forced_drops.count({round, t.sender})) {
            t.dropped = true;
            continue;
        }
        if (s.fault_rng.bernoulli(cfg.fault.drop_prob)) {
            t.dropped = true;
            continue;
        }
        if (s.fault_rng.bernoulli(cfg.fault.tamper_prob)) {
            tamper_wire(t.wire, cfg.fault.tamper_kind, s.fault_rng);
            t.tampered = true;
            result.tampered.push_back(t.sender);
        }
    }

    // Phase 4: member -> agent transmission with energy accounting. Senders
    // whose agent has died reroute to the nearest alive foreign agent.
    std::map<u64, std::vector<DataPacket>> inbox;  // keyed by receiving agent id
    for (InTransit& t : transit) {
        ClusterRoundStats& stats = result.clusters[t.cluster_idx];
        if (t.dropped) {
            stats.dropped.push_back(t.sender);
            continue;
        }
        NodeState& sender = s.topo.node(t.sender);
        if (!sender.alive) {  // died earlier this round (e.g. while receiving as agent)
            stats.dropped.push_back(t.sender);
            continue;
        }
        const Cluster& cl = s.clusters[t.cluster_idx];
        u64 dest = cl.agent;
        if (!s.topo.node(dest).alive) dest = relay_fallback(cl, s.clusters, s.topo);
        if (dest == t.sender) {  // the agent's own reading: no radio hop
            inbox[dest].push_back(parse_packet(t.wire));
            ++sender.seq_counter;
            continue;
        }
        double cost = tx_energy(cfg.energy, packet_bits,
                                distance(sender.pos, s.topo.node(dest).pos));
        double draw = deduct_energy(sender, cost);
        log_draw(s, result, t.sender, draw);
        if (draw < cost) {  // battery died mid-send
            stats.dropped.push_back(t.sender);
            continue;
        }
        ++sender.seq_counter;
        NodeState& receiver = s.topo.node(dest);
        double rcost = rx_energy(cfg.energy, packet_bits);
        double rdraw = deduct_energy(receiver, rcost);
        log_draw(s, result, dest, rdraw);
        if (rdraw < rcost) {  // agent died receiving; packet lost
            stats.dropped.push_back(t.sender);
            continue;
        }
        inbox[dest].push_back(parse_packet(t.wire));
    }

    // Phase 5: per-cluster validation and aggregation (timed).
    auto t_aggregate = Clock::now();
    std::vector<std::pair<AggregateReport, u64>> outgoing;  // report + agent id
    for (size_t ci = 0; ci < s.clusters.size(); ++ci) {
        ClusterRoundStats& stats = result.clusters[ci];
        u64 agent_id = s.clusters[ci].agent;
        NodeState& agent = s.topo.node(agent_id);
        std::vector<DataPacket> arrived;
        if (auto it = inbox.find(agent_id); it != inbox.end()) arrived = std::move(it->second);
        if (!agent.alive) {  // died mid-round; its whole pool is lost
            for (const DataPacket& p : arrived) stats.dropped.push_back(p.sender);
            s.needs_recluster = true;
            continue;
        }
        std::set<u64> seen;
        std::vector<DataPacket> validated;
        for (const DataPacket& p : arrived) {
            if (!seen.insert(p.sender).second) {  // duplicate: treated as replay
                stats.rejected.emplace_back(p.sender, RejectReason::Mac);
                continue;
            }
            auto reg = s.registry.find(p.sender);
            if (reg == s.registry.end()) {  // unknown identity
                stats.rejected.emplace_back(p.sender, RejectReason::Signature);
                continue;
            }
            auto rejection = ca_validate(s.curve, p, round, reg->second.pk, reg->second.mac_key);
            if (rejection)
                stats.rejected.emplace_back(p.sender, *rejection);
            else
                validated.push_back(p);
        }
        double acost = aggregation_energy(cfg.energy, packet_bits, validated.size());
        double adraw = deduct_energy(agent, acost);
        log_draw(s, result, agent_id, adraw);
        if (!agent.alive) {  // fusion cost finished it off
            for (const DataPacket& p : validated) stats.dropped.push_back(p.sender);
            s.needs_recluster = true;
            continue;
        }
        AggregateReport rep = ca_aggregate(s.curve, validated, s.clusters[ci].cluster_id, round,
                                           s.creds[agent_id], s.node_rng[agent_id],
                                           cfg.cache_feed);
        stats.accepted = rep.contributor_ids;
        outgoing.emplace_back(std::move(rep), agent_id);
    }
    s.timers.aggregate_s += seconds_since(t_aggregate);

    // Phase 6: agent -> BS report transmission.
    std::vector<std::pair<AggregateReport, u64>> delivered;
    for (auto& [rep, agent_id] : outgoing) {
        NodeState& agent = s.topo.node(agent_id);
        double bits = static_cast<double>(report_wire_bytes(rep)) * 8.0;
        double cost = tx_energy(cfg.energy, bits, distance(agent.pos, s.topo.bs().pos));
        double draw = deduct_energy(agent, cost);
        log_draw(s, result, agent_id, draw);
        if (draw < cost) {  // report lost with the agent
            s.needs_recluster = true;
            continue;
        }
        ++agent.seq_counter;
        delivered.emplace_back(std::move(rep), agent_id);
    }
    result.bs_messages = delivered.size();

    // Phase 7: BS-side validation, decryption (timed), caching, and recovery.
    std::set<u64> received;
    auto t_decrypt = Clock::now();
    for (const auto& [rep, agent_id] : delivered) {
        ClusterRoundStats& stats = result.clusters.at(rep.cluster_id);
        const NodePublicRecord& agent_rec = s.registry.at(agent_id);
        std::optional<BsDelivery> got;
        try {
            got = bs_receive(s.curve, s.table, s.bs_keys.sk, rep, round, agent_rec.pk,
                             agent_rec.mac_key);
        } catch (const CorruptCiphertextError&) {
            got.reset();  // undecryptable aggregate: report treated as lost
        }
        if (!got) continue;
        stats.report_delivered = true;
        stats.aggregate_pt = got->aggregate_pt;
        result.total_aggregate_pt += got->aggregate_pt;
        u64 truth = 0;
        for (u64 id : rep.contributor_ids) {
            received.insert(id);
            truth += result.readings.at(id);
        }
        if (truth != got->aggregate_pt) result.ground_truth_ok = false;
        if (cfg.cache_feed == CacheFeed::PerNode) {
            for (const auto& [id, pt] : got->per_node_pt) s.cache.put(round, id, pt);
        } else {
            s.cluster_cache.put(round, rep.cluster_id, got->aggregate_pt);
        }
    }
    s.timers.decrypt_s += seconds_since(t_decrypt);

    std::vector<u64> expected;
    expected.reserve(result.readings.size());
    for (const auto& [id, reading] : result.readings) expected.push_back(id);
    RecoveryOutcome rec = bs_recover(expected, received, s.cache, round);
    result.recovered = std::move(rec.recovered);
    result.missing = std::move(rec.missing);
    if (cfg.cache_feed == CacheFeed::AggregateOnly) {
        for (const ClusterRoundStats& stats : result.clusters) {
            if (stats.report_delivered) continue;
            if (auto hit = s.cluster_cache.latest(stats.cluster_id, round))
                result.recovered_clusters[stats.cluster_id] = *hit;
            else
                result.missing_clusters.push_back(stats.cluster_id);
        }
    }
    s.cache.prune(round);
    s.cluster_cache.prune(round);

    for (const NodeState& node : s.topo.nodes) {
        if (node.role != NodeRole::BaseStation) result.network_residual_j += node.residual_energy_j();
    }
    return result;
}

SimRun run_simulation(const SimConfig& cfg) {
    auto t_overall = Clock::now();
    SimState state(cfg);
    SimRun run;
    run.cfg = state.cfg;  // includes the derived fault-stream seed
    for (u64 r = 0; r < cfg.rounds; ++r) {
        try {
            run.rounds.push_back(run_round(state, r));
        } catch (const NetworkDeadError&) {
            break;
        }
    }
    state.timers.overall_s = seconds_since(t_overall);
    run.rounds_survived = run.rounds.size();
    run.radio_energy_j = state.radio_energy_j;
    run.energy_events = std::move(state.energy_events);
    run.timers = state.timers;
    return run;
}

namespace {

void put_id_list(std::ostringstream& out, const std::vector<u64>& ids) {
    out << '[';
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) out << ' ';
        out << ids[i];
    }
    out << ']';
}

void put_recovered(std::ostringstream& out, const std::map<u64, std::pair<u64, u64>>& rec) {
    out << '[';
    bool first = true;
    for (const auto& [id, hit] : rec) {
        if (!first) out << ' ';
        first = false;
        out << id << ':' << hit.first << '@' << hit.second;
    }
    out << ']';
}

}  // namespace

std::string format_round_result(const RoundResult& r) {
    std::ostringstream out;
    out << std::setprecision(9);
    out << "round=" << r.round << " total=" << r.total_aggregate_pt
        << " bs_messages=" << r.bs_messages
        << " ground_truth=" << (r.ground_truth_ok ? "ok" : "FAIL")
        << " residual_j=" << r.network_residual_j << '\n';
    for (const ClusterRoundStats& c : r.clusters) {
        out << "  cluster=" << c.cluster_id << " agent=" << c.agent << " aggregate=";
        if (c.aggregate_pt)
            out << *c.aggregate_pt;
        else
            out << "lost";
        out << " accepted=";
        put_id_list(out, c.accepted);
        out << " rejected=[";
        for (size_t i = 0; i < c.rejected.size(); ++i) {
            if (i) out << ' ';
            out << c.rejected[i].first << ':' << reject_reason_name(c.rejected[i].second);
        }
        out << "] dropped=";
        put_id_list(out, c.dropped);
        out << '\n';
    }
    out << "  tampered=";
    put_id_list(out, r.tampered);
    out << " recovered=";
    put_recovered(out, r.recovered);
    out << " missing=";
    put_id_list(out, r.missing);
    out << '\n';
    if (!r.recovered_clusters.empty() || !r.missing_clusters.empty()) {
        out << "  recovered_clusters=";
        put_recovered(out, r.recovered_clusters);
        out << " missing_clusters=";
        put_id_list(out, r.missing_clusters);
        out << '\n';
    }
    return out.str();
}

}  // namespace secagg
