// sawctl: command line front end for the walk enumeration, exact chain
// audits, Monte Carlo sampling and the G-method checks.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "saw/harness.hpp"

int main(int argc, char** argv) {
    using saw::harness::RunConfig;
    RunConfig cfg;
    std::size_t horizon = 0;
    std::string variant = "pivot";
    std::string start;

    CLI::App app{"Self-avoiding walk pivot chains: enumeration, exact audits, sampling"};
    app.set_version_flag("--version", std::string(SAW_VERSION));
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--d", cfg.d, "lattice dimension")->check(CLI::Range(1, 6));
        sub->add_option("--walk-length", cfg.walk_length, "walk length N")->check(CLI::Range(1, 100000));
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--tol", cfg.tol, "convergence tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--horizon", horizon, "number of exact steps (audit, conjecture)");
        sub->add_option("--replicas", cfg.replicas, "independent replicas (sample)")->check(CLI::PositiveNumber);
        sub->add_option("--max-walks", cfg.max_walks, "enumeration capacity");
    };

    auto* en = app.add_subcommand("enumerate", "count walks and check the first-step class identity");
    add_common(en);
    en->add_option("--dump-walks", cfg.dump_walks, "write every walk, one per line");

    auto* au = app.add_subcommand("audit", "exact transition matrix audit");
    add_common(au);
    au->add_option("--m0", cfg.m0, "lower bound for the prefix search")->check(CLI::PositiveNumber);
    au->add_option("--dump-matrix", cfg.dump_matrix, "prefix for matrix dumps");
    au->add_option("--stochastic-tol", cfg.stochastic_tol, "tolerance for dense structure checks");

    auto* co = app.add_subcommand("conjecture", "L1 distance tables for pivot vs pivot+");
    add_common(co);
    co->add_option("--summary", cfg.summary, "summary JSON path (default <out>.summary.json)");
    co->add_option("--start", start, "start walk, e.g. +1,+2,+1");

    auto* sa = app.add_subcommand("sample", "Monte Carlo replicas of a chain");
    add_common(sa);
    sa->add_option("--n-steps", cfg.n_steps, "steps per replica");
    sa->add_option("--variant", variant, "pivot or pivot+")->check(CLI::IsMember({"pivot", "pivot+", "pivot_plus"}));
    sa->add_option("--observe", cfg.observe, "histogram or end2end")->check(CLI::IsMember({"histogram", "end2end"}));
    sa->add_option("--dump-trajectory", cfg.dump_trajectory, "write the replica-0 trajectory");

    auto* gm = app.add_subcommand("gmethod", "fixture and random-chain checks of the G-method");
    add_common(gm);
    gm->add_option("--cases", cfg.cases, "random cases per suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
    for (auto* sub : app.get_subcommands())
        if (sub->count("--horizon")) cfg.horizon = horizon;
    if (!start.empty()) cfg.start = start;
    try {
        cfg.variant = saw::parse_variant(variant);
    } catch (const std::exception& e) {
        std::cerr << "sawctl: " << e.what() << '\n';
        return 2;
    }
    return saw::harness::run(cfg, std::cout, std::cerr);
}
