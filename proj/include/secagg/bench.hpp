#pragma once

#include <string>
#include <vector>

#include "secagg/protocol.hpp"

namespace secagg {

enum class Phase { Encrypt, Decrypt, Aggregate, Overall };

// One CSV row. When valid is false the metric columns are left empty in the
// CSV and `error` says why the point was skipped.
struct MetricsRecord {
    std::string sweep_var;
    u64 sweep_value = 0;
    bool valid = true;
    std::string error;
    double encryption_s = 0.0;
    double decryption_s = 0.0;
    double aggregation_s = 0.0;
    double overall_s = 0.0;
    double cpu_energy_j = 0.0;
    double radio_energy_j = 0.0;
    u64 rounds_survived = 0;
};

/// E = V * I * t: electrical power times time.
double compute_cpu_energy(double volts, double amperes, double seconds);

// Runs the workload `trials` times and returns the trial with the median
// overall time. All four phase timings are read from that one trial, so
// overall >= encryption + decryption + aggregation holds structurally.
SimRun measure_workload(const SimConfig& cfg, u64 trials);

double time_phase(Phase phase, const SimConfig& cfg, u64 trials = 5);

/// One sweep point: timings from the median trial plus the deterministic
// outputs (cpu/radio energy, rounds survived).
MetricsRecord measure_point(const SimConfig& cfg, const std::string& sweep_var,
                            u64 sweep_value, u64 trials);

// Vary node_count (cluster count fixed). Counts below cluster_count, or any
// config-invalid combination, produce an error row instead of aborting.
std::vector<MetricsRecord> sweep_nodes(const SimConfig& base, const std::vector<u64>& node_counts,
                                       u64 trials = 5);

// Vary cluster_count over agent_counts with node_count fixed.
std::vector<MetricsRecord> sweep_agents(const SimConfig& base,
                                        const std::vector<u64>& agent_counts, u64 trials = 5);

inline constexpr const char* kCsvHeader =
    "sweep_var,sweep_value,encryption_s,decryption_s,aggregation_s,overall_s,"
    "cpu_energy_j,radio_energy_j,rounds_survived";

// Header plus one row per record, ordered by sweep value; 6 significant
// digits for the floating-point columns.
std::string render_csv(std::vector<MetricsRecord> records);
void emit_csv(const std::vector<MetricsRecord>& records, const std::string& path);

}  // namespace secagg
