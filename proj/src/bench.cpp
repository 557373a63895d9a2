#include "secagg/bench.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace secagg {

double compute_cpu_energy(double volts, double amperes, double seconds) {
    if (volts < 0.0 || amperes < 0.0 || seconds < 0.0)
        throw DomainError("compute_cpu_energy: negative input");
    return volts * amperes * seconds;
}

SimRun measure_workload(const SimConfig& cfg, u64 trials) {
    if (trials == 0) throw DomainError("measure_workload: need at least one trial");
    std::vector<SimRun> runs;
    runs.reserve(trials);
    for (u64 t = 0; t < trials; ++t) runs.push_back(run_simulation(cfg));
    std::vector<size_t> order(runs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return runs[a].timers.overall_s < runs[b].timers.overall_s;
    });
    return std::move(runs[order[(order.size() - 1) / 2]]);
}

double time_phase(Phase phase, const SimConfig& cfg, u64 trials) {
    SimRun run = measure_workload(cfg, trials);
    switch (phase) {
        case Phase::Encrypt: return run.timers.encrypt_s;
        case Phase::Decrypt: return run.timers.decrypt_s;
        case Phase::Aggregate: return run.timers.aggregate_s;
        case Phase::Overall: return run.timers.overall_s;
    }
    return 0.0;
}

MetricsRecord measure_point(const SimConfig& cfg, const std::string& sweep_var, u64 sweep_value,
                            u64 trials) {
    MetricsRecord rec;
    rec.sweep_var = sweep_var;
    rec.sweep_value = sweep_value;
    try {
        SimRun run = measure_workload(cfg, trials);
        rec.encryption_s = run.timers.encrypt_s;
        rec.decryption_s = run.timers.decrypt_s;
        rec.aggregation_s = run.timers.aggregate_s;
        rec.overall_s = run.timers.overall_s;
        rec.cpu_energy_j = compute_cpu_energy(cfg.cpu_voltage_v, cfg.cpu_current_a,
                                              run.timers.overall_s);
        rec.radio_energy_j = run.radio_energy_j;
        rec.rounds_survived = run.rounds_survived;
    } catch (const Error& e) {
        rec.valid = false;
        rec.error = e.what();
    }
    return rec;
}

std::vector<MetricsRecord> sweep_nodes(const SimConfig& base, const std::vector<u64>& node_counts,
                                       u64 trials) {
    std::vector<MetricsRecord> records;
    for (u64 count : node_counts) {
        SimConfig cfg = base;
        cfg.node_count = count;
        records.push_back(measure_point(cfg, "nodes", count, trials));
    }
    return records;
}

std::vector<MetricsRecord> sweep_agents(const SimConfig& base,
                                        const std::vector<u64>& agent_counts, u64 trials) {
    std::vector<MetricsRecord> records;
    for (u64 count : agent_counts) {
        SimConfig cfg = base;
        cfg.cluster_count = count;
        records.push_back(measure_point(cfg, "agents", count, trials));
    }
    return records;
}

std::string render_csv(std::vector<MetricsRecord> records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const MetricsRecord& a, const MetricsRecord& b) {
                         return a.sweep_value < b.sweep_value;
                     });
    std::ostringstream out;
    out << kCsvHeader << '\n';
    out << std::setprecision(6);
    for (const MetricsRecord& r : records) {
        out << r.sweep_var << ',' << r.sweep_value << ',';
        if (r.valid) {
            out << r.encryption_s << ',' << r.decryption_s << ',' << r.aggregation_s << ','
                << r.overall_s << ',' << r.cpu_energy_j << ',' << r.radio_energy_j << ','
                << r.rounds_survived;
        } else {
            out << ",,,,,,";  // error row: metric columns empty
        }
        out << '\n';
    }
    return out.str();
}

void emit_csv(const std::vector<MetricsRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open CSV output file: " + path);
    out << render_csv(records);
    if (!out) throw IoError("failed writing CSV output file: " + path);
}

}  // namespace secagg
