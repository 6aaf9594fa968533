#include "survnet/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Survivability analysis for source/sink engineering networks"};
    app.require_subcommand(1);

    survnet::RunConfig cfg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("input", cfg.input, "network description file")->required();
        return cmd;
    };
    auto add_mapping = [&](CLI::App* cmd) {
        cmd->add_option("--mode", cfg.mode, "sub-topology dedup mode: structural|labeled")
            ->check(CLI::IsMember({"structural", "labeled"}));
        cmd->add_flag("--source-transit", cfg.source_transit,
                      "let connectivity pass through sources");
        return cmd;
    };

    CLI::App* transform = add_common(app.add_subcommand(
        "transform", "convert a network description to its links-only form"));
    transform->add_option("--dot", cfg.dot_path, "write a DOT rendering to this file");

    CLI::App* groups =
        add_common(app.add_subcommand("groups", "list source/sink groups of the network"));
    groups->add_flag("--machine", cfg.machine, "machine-oriented output");

    CLI::App* map_cmd = add_mapping(add_common(
        app.add_subcommand("map", "map each sink onto its reduced sub-topology")));
    map_cmd->add_option("--out", cfg.out_dir, "write DOT renderings into this directory");

    CLI::App* builddb = add_mapping(add_common(
        app.add_subcommand("builddb", "build exhaustive scenario tables for every sub-topology")));
    builddb->add_option("--out", cfg.out_dir, "output directory for the tables")->required();
    builddb->add_flag("--csv", cfg.csv, "also write CSV listings");

    CLI::App* query = add_mapping(add_common(
        app.add_subcommand("query", "answer a fault-scenario question from the tables")));
    query->add_option("--db", cfg.db_dir, "directory of prebuilt tables (default: build in memory)");
    query->add_option("--fault", cfg.faults, "faulty element names (repeat or comma-separate)");
    query->add_option("--sink", cfg.sinks, "restrict to these sink ids");

    CLI::App* analyze = add_mapping(add_common(
        app.add_subcommand("analyze", "compute per-sink survivability probabilities")));
    analyze->add_option("--db", cfg.db_dir, "directory of prebuilt tables");
    analyze->add_option("--availability", cfg.availability,
                        "uniform per-element availability in [0,1]");
    analyze->add_option("--availability-file", cfg.availability_file,
                        "per-element availability table ('<element> <p>' lines, '*' default)");
    analyze->add_option("--sink", cfg.sinks, "restrict to these sink ids");

    add_mapping(add_common(
        app.add_subcommand("report", "summarize the scenario-space reduction")));

    CLI::App* verify = add_mapping(add_common(
        app.add_subcommand("verify", "cross-check table lookups against direct graph search")));
    verify->add_option("--db", cfg.db_dir, "directory of prebuilt tables");
    verify->add_option("--max-m", cfg.max_m, "refuse networks with more elements than this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    return survnet::run_command(cfg, std::cout, std::cerr);
}
