#include <iostream>

#include <CLI11.hpp>

#include "superdenom/cli.hpp"

int main(int argc, char **argv)
{
    using namespace superdenom;
    CLI::App app{"Root data and denominator identity checks for basic classical Lie superalgebras"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string output = "text";
    std::string family;

    auto add_common = [&](CLI::App *sub, bool needs_family) {
        auto *f = sub->add_option("--family", family, "GL, B, D, C or Q");
        if (needs_family) {
            f->required();
        }
        sub->add_option("--m", cfg.m, "rank of the first factor")->check(CLI::NonNegativeNumber);
        sub->add_option("--n", cfg.n, "rank of the second factor")->check(CLI::NonNegativeNumber);
        sub->add_option("--sharp", cfg.sharp, "B_side or C_side for B(m,n) with m = n");
        sub->add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--group-cap", cfg.group_cap, "largest Weyl group to enumerate");
    };
    auto add_height = [&](CLI::App *sub) {
        sub->add_option("--height", cfg.height, "truncation height")->check(CLI::NonNegativeNumber);
    };

    auto *build = app.add_subcommand("build", "print roots, rho and group orders");
    add_common(build, true);
    auto *pairs = app.add_subcommand("pairs", "list admissible pairs (S, Pi)");
    add_common(pairs, true);
    auto *diagram = app.add_subcommand("diagram", "count equivalence classes or canonicalize a diagram");
    add_common(diagram, true);
    diagram->add_option("--parse", cfg.parse, "diagram text to canonicalize");
    auto *verify = app.add_subcommand("verify", "check the denominator identity");
    add_common(verify, true);
    add_height(verify);
    verify->add_option("--variant", cfg.variant, "step2, step2_prime, step3 or step3_prime");
    auto *qn = app.add_subcommand("qn", "check the Q(n) identity and a(S)");
    add_common(qn, false);
    add_height(qn);
    auto *orbits = app.add_subcommand("orbits", "scan for regular W-orbits below rho0");
    add_common(orbits, true);
    add_height(orbits);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    for (auto *sub : app.get_subcommands()) {
        cfg.command = parse_command(sub->get_name());
    }
    cfg.family = family.empty() ? "Q" : family;
    cfg.json = output == "json";
    return run(cfg, std::cout, std::cerr);
}
