#include <iostream>

#include <CLI11.hpp>

#include "semchan/cli.hpp"

int main(int argc, char** argv) {
    semchan::cli::RunConfig cfg;
    CLI::App app{"semantic channel analysis over ground-Datalog knowledge bases"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "output format: text | json | csv");
        sub->add_option("--tol", cfg.tol, "capacity iteration tolerance in bits");
    };
    auto add_kb = [&](CLI::App* sub) {
        sub->add_option("--kb", cfg.kb_path, "sender knowledge base file");
    };
    auto add_receivers = [&](CLI::App* sub) {
        sub->add_option("--receiver", cfg.receiver_paths, "receiver KB file (repeatable)");
    };
    auto add_channel = [&](CLI::App* sub) {
        sub->add_option("--channel", cfg.channel_path, "carrier channel config (JSON)");
    };
    auto add_sim = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "simulation seed");
        sub->add_option("--trials", cfg.trials, "trials per message");
        sub->add_option("--n", cfg.block_lengths, "block lengths (repeatable)")->delimiter(',');
    };

    auto* analyze = app.add_subcommand("analyze", "closure, core, and strata of one KB");
    add_kb(analyze);
    add_common(analyze);

    auto* overlap = app.add_subcommand("overlap", "sender/receiver vocabulary decomposition");
    add_kb(overlap);
    add_receivers(overlap);
    add_channel(overlap);
    add_common(overlap);

    auto* invariants = app.add_subcommand("invariants", "full invariant report per receiver");
    add_kb(invariants);
    add_receivers(invariants);
    add_channel(invariants);
    add_common(invariants);

    auto* capacity = app.add_subcommand("capacity", "carrier and semantic capacity");
    add_kb(capacity);
    add_receivers(capacity);
    add_channel(capacity);
    add_common(capacity);

    auto* simulate = app.add_subcommand("simulate", "two-layer block-coding simulation");
    add_kb(simulate);
    add_receivers(simulate);
    add_channel(simulate);
    add_sim(simulate);
    add_common(simulate);

    auto* example = app.add_subcommand("example", "run the shipped worked example end to end");
    example->add_option("--data-dir", cfg.data_dir, "directory holding the example data files");
    add_sim(example);
    add_common(example);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? semchan::cli::kExitOk : semchan::cli::kExitUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return semchan::cli::run(cfg, std::cout, std::cerr);
}
