// secagg: benchmark and simulation driver for the secure-aggregation stack.
//
//   secagg run          [--config F] [--seed N]                 round-by-round report
//   secagg sweep-nodes  [--config F] [--seed N] [--out F] [--trials N]
//   secagg sweep-agents [--config F] [--seed N] [--out F] [--trials N]
//   secagg selftest                                             invariant suite, tiny curve
//
// Exit codes: 0 success, 1 configuration/usage error, 2 selftest failure.

#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "secagg/bench.hpp"
#include "secagg/config.hpp"
#include "secagg/errors.hpp"
#include "secagg/protocol.hpp"
#include "secagg/selftest.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<secagg::u64> seed;
    std::string out_path = "-";
    secagg::u64 trials = 5;
};

secagg::SimConfig load_base(const CommonArgs& args) {
    secagg::SimConfig cfg;
    if (!args.config_path.empty()) cfg = secagg::load_config_file(args.config_path);
    if (args.seed) cfg.seed = *args.seed;
    return cfg;
}

void write_csv(const std::vector<secagg::MetricsRecord>& records, const std::string& out) {
    if (out == "-")
        std::cout << secagg::render_csv(records);
    else
        secagg::emit_csv(records, out);
}

int do_run(const CommonArgs& args) {
    const secagg::SimConfig cfg = load_base(args);
    cfg.validate();
    const secagg::SimRun run = secagg::run_simulation(cfg);

    std::cout << "# configuration\n" << cfg.to_text() << "# rounds\n";
    for (const auto& round : run.rounds) std::cout << secagg::format_round_result(round);
    std::cout << "# summary\n"
              << "rounds_survived=" << run.rounds_survived << "\n"
              << "radio_energy_j=" << std::setprecision(9) << run.radio_energy_j << "\n";
    return 0;
}

int do_sweep_nodes(const CommonArgs& args) {
    const secagg::SimConfig base = load_base(args);
    const std::vector<secagg::u64> counts = {10, 20, 30, 40, 50};
    write_csv(secagg::sweep_nodes(base, counts, args.trials), args.out_path);
    return 0;
}

int do_sweep_agents(const CommonArgs& args) {
    secagg::SimConfig base = load_base(args);
    if (args.config_path.empty()) {
        base.node_count = 20;   // stock sweep workload: 20 nodes pushing
        base.payload_kb = 10.0; // 10 kilobits of sensed data each per round
    }
    const std::vector<secagg::u64> counts = {1, 2, 3, 4, 5};
    write_csv(secagg::sweep_agents(base, counts, args.trials), args.out_path);
    return 0;
}

void attach_common(CLI::App* sub, CommonArgs& args, bool with_sweep_flags) {
    sub->add_option("--config", args.config_path, "Simulation config file (key = value lines)");
    sub->add_option("--seed", args.seed, "Override the run seed");
    if (with_sweep_flags) {
        sub->add_option("--out", args.out_path, "CSV output path; '-' writes to stdout");
        sub->add_option("--trials", args.trials, "Timing trials per sweep point (median kept)")
            ->check(CLI::PositiveNumber);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secure data-aggregation simulator and benchmark harness"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* run = app.add_subcommand("run", "Run one simulation and print the round report");
    attach_common(run, args, false);
    CLI::App* nodes =
        app.add_subcommand("sweep-nodes", "Benchmark over node counts {10,20,30,40,50}");
    attach_common(nodes, args, true);
    CLI::App* agents =
        app.add_subcommand("sweep-agents", "Benchmark over agent counts {1,2,3,4,5}");
    attach_common(agents, args, true);
    app.add_subcommand("selftest", "Run the invariant suite on the tiny curve");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (app.got_subcommand("run")) return do_run(args);
        if (app.got_subcommand("sweep-nodes")) return do_sweep_nodes(args);
        if (app.got_subcommand("sweep-agents")) return do_sweep_agents(args);
        return secagg::run_selftest(std::cout) == 0 ? 0 : 2;
    } catch (const secagg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
