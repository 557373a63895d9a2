#include "secagg/config.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "secagg/digest.hpp"

namespace secagg {

const char* tamper_kind_name(TamperKind kind) {
    switch (kind) {
        case TamperKind::FlipCiphertext: return "flip-ciphertext";
        case TamperKind::FlipMac: return "flip-mac";
        case TamperKind::ForgeSignature: return "forge-signature";
    }
    return "?";
}

const char* cache_feed_name(CacheFeed feed) {
    switch (feed) {
        case CacheFeed::PerNode: return "per-node";
        case CacheFeed::AggregateOnly: return "aggregate-only";
    }
    return "?";
}

std::string curve_preset_record(const std::string& name) {
    if (name == "tiny") return "p=17 a=2 b=2 gx=5 gy=1 n=19";
    if (name == "desk") return "p=2147483659 a=3 b=41 gx=1 gy=409700327 n=2147489579";
    throw ConfigError("unknown curve preset '" + name + "' (expected tiny or desk)");
}

Position SimConfig::bs_position() const {
    return Position{bs_x.value_or(area_w_m / 2.0), bs_y.value_or(area_h_m / 2.0)};
}

u64 SimConfig::reading_bits() const {
    return std::bit_width(max_reading | 1);
}

u64 SimConfig::readings_per_packet() const {
    if (payload_kb <= 0.0) return 1;
    double bits = payload_kb * 1000.0;
    u64 count = static_cast<u64>(std::ceil(bits / static_cast<double>(reading_bits())));
    return count == 0 ? 1 : count;
}

u64 SimConfig::max_aggregate() const {
    unsigned __int128 total = static_cast<unsigned __int128>(node_count) * max_reading *
                              readings_per_packet();
    if (total > std::numeric_limits<u64>::max())
        throw ConfigError("max_aggregate overflows 64 bits; shrink nodes/reading/payload");
    return static_cast<u64>(total);
}

Curve SimConfig::make_curve() const {
    if (curve_spec == "tiny" || curve_spec == "desk")
        return Curve::from_record(curve_preset_record(curve_spec));
    return Curve::from_record(curve_spec);
}

void SimConfig::validate() const {
    if (cluster_count < 1) throw ConfigError("cluster_count must be at least 1");
    if (node_count < cluster_count) throw ConfigError("node_count must be >= cluster_count");
    if (area_w_m <= 0.0 || area_h_m <= 0.0) throw ConfigError("area dimensions must be positive");
    if (radio_range_m <= 0.0) throw ConfigError("radio_range must be positive");
    if (initial_energy_j <= 0.0) throw ConfigError("initial_energy must be positive");
    if (payload_kb < 0.0) throw ConfigError("payload_kb must be >= 0");
    if (fault.drop_prob < 0.0 || fault.drop_prob > 1.0)
        throw ConfigError("drop_prob must lie in [0, 1]");
    if (fault.tamper_prob < 0.0 || fault.tamper_prob > 1.0)
        throw ConfigError("tamper_prob must lie in [0, 1]");
    if (cpu_voltage_v <= 0.0 || cpu_current_a <= 0.0)
        throw ConfigError("cpu_voltage and cpu_current must be positive");
    try {
        energy.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    Curve curve = make_curve();  // also validates the curve record itself
    if (max_aggregate() >= curve.n())
        throw ConfigError("node_count * max_reading * readings-per-packet must stay below the "
                          "curve order (aggregate would wrap)");
    Position bs = bs_position();
    if (bs.x < 0.0 || bs.x > area_w_m || bs.y < 0.0 || bs.y > area_h_m)
        throw ConfigError("base station position must lie inside the area");
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

u64 parse_u64(const std::string& key, const std::string& value) {
    // stoull would wrap "-3" silently, so accept digits only.
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("config key '" + key + "': expected unsigned integer, got '" + value +
                          "'");
    try {
        return std::stoull(value);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': value out of range: '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected number, got '" + value + "'");
    }
}

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
    SimConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::set<std::string> seen;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        if (!seen.insert(key).second)
            throw ConfigError("config: duplicate key '" + key + "'");

        if (key == "node_count") cfg.node_count = parse_u64(key, value);
        else if (key == "cluster_count") cfg.cluster_count = parse_u64(key, value);
        else if (key == "rounds") cfg.rounds = parse_u64(key, value);
        else if (key == "area_w") cfg.area_w_m = parse_double(key, value);
        else if (key == "area_h") cfg.area_h_m = parse_double(key, value);
        else if (key == "radio_range") cfg.radio_range_m = parse_double(key, value);
        else if (key == "initial_energy") cfg.initial_energy_j = parse_double(key, value);
        else if (key == "max_reading") cfg.max_reading = parse_u64(key, value);
        else if (key == "payload_kb") cfg.payload_kb = parse_double(key, value);
        else if (key == "em") cfg.energy.em_j_per_bit = parse_double(key, value);
        else if (key == "eps_fs") cfg.energy.eps_fs_j_per_bit_m2 = parse_double(key, value);
        else if (key == "eps_amp") cfg.energy.eps_amp_j_per_bit_m4 = parse_double(key, value);
        else if (key == "eda") cfg.energy.eda_j_per_bit = parse_double(key, value);
        else if (key == "curve") cfg.curve_spec = value;
        else if (key == "seed") cfg.seed = parse_u64(key, value);
        else if (key == "drop_prob") cfg.fault.drop_prob = parse_double(key, value);
        else if (key == "tamper_prob") cfg.fault.tamper_prob = parse_double(key, value);
        else if (key == "tamper_kind") {
            if (value == "flip-ciphertext") cfg.fault.tamper_kind = TamperKind::FlipCiphertext;
            else if (value == "flip-mac") cfg.fault.tamper_kind = TamperKind::FlipMac;
            else if (value == "forge-signature") cfg.fault.tamper_kind = TamperKind::ForgeSignature;
            else throw ConfigError("config key 'tamper_kind': unknown value '" + value + "'");
        } else if (key == "cache_rounds") cfg.cache_rounds = parse_u64(key, value);
        else if (key == "cache_feed") {
            if (value == "per-node") cfg.cache_feed = CacheFeed::PerNode;
            else if (value == "aggregate-only") cfg.cache_feed = CacheFeed::AggregateOnly;
            else throw ConfigError("config key 'cache_feed': unknown value '" + value + "'");
        } else if (key == "cpu_voltage") cfg.cpu_voltage_v = parse_double(key, value);
        else if (key == "cpu_current") cfg.cpu_current_a = parse_double(key, value);
        else if (key == "bs_x") cfg.bs_x = parse_double(key, value);
        else if (key == "bs_y") cfg.bs_y = parse_double(key, value);
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string SimConfig::to_text() const {
    std::ostringstream out;
    out << "# digest = " << kDigestAlgorithm << "\n";
    out << "node_count = " << node_count << "\n";
    out << "cluster_count = " << cluster_count << "\n";
    out << "rounds = " << rounds << "\n";
    out << "area_w = " << format_double(area_w_m) << "\n";
    out << "area_h = " << format_double(area_h_m) << "\n";
    out << "radio_range = " << format_double(radio_range_m) << "\n";
    out << "initial_energy = " << format_double(initial_energy_j) << "\n";
    out << "max_reading = " << max_reading << "\n";
    out << "payload_kb = " << format_double(payload_kb) << "\n";
    out << "em = " << format_double(energy.em_j_per_bit) << "\n";
    out << "eps_fs = " << format_double(energy.eps_fs_j_per_bit_m2) << "\n";
    out << "eps_amp = " << format_double(energy.eps_amp_j_per_bit_m4) << "\n";
    out << "eda = " << format_double(energy.eda_j_per_bit) << "\n";
    out << "curve = " << curve_spec << "\n";
    out << "seed = " << seed << "\n";
    out << "drop_prob = " << format_double(fault.drop_prob) << "\n";
    out << "tamper_prob = " << format_double(fault.tamper_prob) << "\n";
    out << "tamper_kind = " << tamper_kind_name(fault.tamper_kind) << "\n";
    out << "cache_rounds = " << cache_rounds << "\n";
    out << "cache_feed = " << cache_feed_name(cache_feed) << "\n";
    out << "cpu_voltage = " << format_double(cpu_voltage_v) << "\n";
    out << "cpu_current = " << format_double(cpu_current_a) << "\n";
    out << "bs_x = " << format_double(bs_position().x) << "\n";
    out << "bs_y = " << format_double(bs_position().y) << "\n";
    return out.str();
}

}  // namespace secagg
