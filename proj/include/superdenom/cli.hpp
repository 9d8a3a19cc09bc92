// Command dispatch for the superdenom tool, independent of argument parsing.
#pragma once

#include <algorithm>
#include <ostream>
#include <string>

#include "io.hpp"

namespace superdenom
{

enum class Command { build, pairs, diagram, verify, qn, orbits };

inline Command parse_command(const std::string &s)
{
    if (s == "build") return Command::build;
    if (s == "pairs") return Command::pairs;
    if (s == "diagram") return Command::diagram;
    if (s == "verify") return Command::verify;
    if (s == "qn") return Command::qn;
    if (s == "orbits") return Command::orbits;
    throw ValidationError("unknown command '" + s + "'");
}

struct RunConfig {
    Command command = Command::build;
    std::string family = "GL";
    int m = 1;
    int n = 1;
    std::optional<std::string> sharp;
    int height = 8;
    std::optional<std::string> variant;
    bool json = false;
    std::size_t group_cap = default_group_cap;
    std::optional<std::string> parse; // diagram text for `diagram --parse`
};

enum ExitCode { exit_ok = 0, exit_failed = 1, exit_usage = 2, exit_resource = 3 };

namespace detail
{

inline SuperType super_type(const RunConfig &c)
{
    SuperType t{parse_family(c.family), c.m, c.n, {}};
    if (c.sharp) {
        t.sharp = parse_sharp(*c.sharp);
    }
    if (t.family == Family::C || t.family == Family::Q) {
        t.m = t.n;
    }
    return t;
}

inline std::string yes_no(bool b) { return b ? "yes" : "NO"; }

inline void print_discrepancy(std::ostream &out, const std::string &what, const std::optional<Discrepancy> &d)
{
    if (d) {
        out << "  " << what << " differs at e^(" << to_string(d->exponent) << "): " << to_string(d->lhs) << " vs "
            << to_string(d->rhs) << "\n";
    }
}

inline int run_build(const RunConfig &c, std::ostream &out)
{
    auto rs = RootSystem::build(super_type(c));
    if (c.json) {
        out << dump_json(build_report(rs));
        return exit_ok;
    }
    auto g = weyl_groups(rs);
    out << to_string(rs.type()) << " shape " << to_string(rs.shape()) << ", " << rs.eps_count() << " eps + "
        << rs.delta_count() << " delta coordinates, defect " << rs.defect() << "\n";
    auto list = [&](const std::string &name, const std::vector<Weight> &ws) {
        out << name << " (" << ws.size() << "):";
        for (const auto &w : ws) {
            out << " " << to_string(w);
        }
        out << "\n";
    };
    list("positive even", rs.positive_even());
    list("sharp positive", rs.positive_sharp());
    list("odd", rs.odd());
    out << "rho0 = " << to_string(rs.rho0()) << "\n";
    out << "|W| = " << g.full.order << ", |W#| = " << g.sharp.order << ", |W_2| = " << g.second.order << "\n";
    for (auto v : applicable_variants(rs)) {
        auto p = standard_pair(rs, v);
        out << to_string(v) << ": S = ";
        for (const auto &b : p.S) {
            out << to_string(b) << " ";
        }
        out << "| Pi = ";
        for (const auto &a : p.pi.simple_roots) {
            out << to_string(a) << " ";
        }
        out << "| rho = " << to_string(p.pi.rho) << "\n";
    }
    return exit_ok;
}

inline int run_pairs(const RunConfig &c, std::ostream &out)
{
    auto rs = RootSystem::build(super_type(c));
    Json j = pairs_report(rs);
    if (c.json) {
        out << dump_json(j);
        return exit_ok;
    }
    out << to_string(rs.type()) << ": " << j["count"].get<std::size_t>() << " admissible pairs\n";
    for (const auto &p : j["pairs"]) {
        out << "  S = " << p["S"].dump() << "  Pi = " << p["pi"].dump();
        if (!p["diagram"].is_null()) {
            out << "  " << p["diagram"].get<std::string>();
        }
        out << "\n";
    }
    return exit_ok;
}

inline int run_diagram(const RunConfig &c, std::ostream &out)
{
    auto rs = RootSystem::build(super_type(c));
    if (c.parse) {
        auto mode = rs.sharp_on_first_factor() ? MarkingMode::M : MarkingMode::N;
        auto d = parse_diagram(*c.parse, mode);
        validate(d, frowns_allowed(rs));
        Json j = diagram_parse_report(d, rs);
        if (c.json) {
            out << dump_json(j);
            return exit_ok;
        }
        out << "canonical form: " << j["canonical"].get<std::string>() << "\n";
        out << "moves:";
        for (const auto &m : j["moves"]) {
            out << " " << m.get<std::string>();
        }
        out << "\nS = " << j["pair"]["S"].dump() << "\nPi = " << j["pair"]["pi"].dump() << "\n";
        return exit_ok;
    }
    auto rep = equivalence_classes(rs);
    if (c.json) {
        out << dump_json(to_json(rep, rs));
        return rep.ok() ? exit_ok : exit_failed;
    }
    out << to_string(rs.type()) << ": " << rep.components
        << (rep.components == 1 ? " equivalence class" : " equivalence classes") << " (expected " << rep.expected
        << ")\n";
    out << "  " << rep.pair_count << " admissible pairs over " << rep.simple_system_count << " simple systems\n";
    for (const auto &d : rep.classes) {
        out << "  canonical: " << to_string(d, true) << "\n";
    }
    out << "  unrestricted exchanges give " << rep.lemma_components << " component(s)\n";
    out << "  Pi determined by S: " << yes_no(rep.pi_determined_by_s) << ", canonical forms consistent: "
        << yes_no(rep.consistent) << "\n";
    return rep.ok() ? exit_ok : exit_failed;
}

inline int run_verify(const RunConfig &c, std::ostream &out)
{
    auto rs = RootSystem::build(super_type(c));
    std::vector<PairVariant> variants;
    if (c.variant) {
        variants.push_back(parse_variant(*c.variant));
    } else {
        variants = applicable_variants(rs);
    }
    if (variants.empty()) {
        throw DomainError(to_string(rs.type()) + " has no admissible pairs; use the qn command");
    }
    VerifyOptions opt;
    opt.height = c.height;
    opt.group_cap = c.group_cap;
    bool all = true;
    Json reports = Json::array();
    for (auto v : variants) {
        auto r = verify(rs, v, opt);
        all = all && r.ok();
        if (c.json) {
            reports.push_back(to_json(r));
            continue;
        }
        std::int64_t total = 0;
        for (const auto &[stage, us] : r.timings_us) {
            total += us;
        }
        out << to_string(rs.type()) << " " << r.variant << " H=" << r.height << ": "
            << (r.ok() ? "equal" : "NOT EQUAL") << "\n";
        out << "  lhs terms " << r.lhs_terms << ", rhs terms " << r.rhs_terms << ", |W#| = " << r.group_order
            << ", e^rho coefficient " << to_string(r.e_rho_coefficient) << "\n";
        out << "  closed = expanded: " << yes_no(r.expanded_equal) << ", skew-invariant: " << yes_no(r.skew_ok)
            << ", symbolic: " << (r.symbolic ? yes_no(*r.symbolic) : std::string("skipped")) << ", " << total / 1000
            << " ms\n";
        print_discrepancy(out, "lhs vs rhs", r.first_discrepancy);
        print_discrepancy(out, "closed vs expanded", r.expanded_discrepancy);
        if (r.skew_generator) {
            out << "  skew fails for " << to_string(*r.skew_generator) << "\n";
        }
    }
    if (c.json) {
        Json j = header("verify_set");
        j["system"] = to_json(rs.type());
        j["height"] = c.height;
        j["reports"] = reports;
        j["equal"] = std::all_of(reports.begin(), reports.end(), [](const Json &r) { return r["equal"].get<bool>(); });
        j["ok"] = all;
        out << dump_json(j);
    }
    return all ? exit_ok : exit_failed;
}

inline int run_qn(const RunConfig &c, std::ostream &out)
{
    auto rs = RootSystem::build({Family::Q, c.n, c.n, {}});
    VerifyOptions opt;
    opt.group_cap = c.group_cap;
    auto r = qn_identity(c.n, qn_standard_s(rs), c.height, opt);
    if (c.json) {
        out << dump_json(to_json(r));
        return r.ok() ? exit_ok : exit_failed;
    }
    out << "Q(" << c.n << "), S =";
    for (const auto &b : r.S) {
        out << " " << to_string(b);
    }
    out << ", convention " << r.convention << "\n";
    out << "a(S) = " << to_string(r.a_S) << ", |a(S)| = " << to_string(abs(r.a_S)) << ", "
        << (r.ok() ? "identity verified" : "identity FAILED") << " to height " << r.height << "\n";
    out << "lemma sums: sigma(i) > sigma(n+1-i) gives " << to_string(r.lemma_literal_sum)
        << ", sigma(i) < sigma(n+1-i) gives " << to_string(r.lemma_reversed_sum) << "\n";
    print_discrepancy(out, "a(S)R vs sum", r.first_discrepancy);
    return r.ok() ? exit_ok : exit_failed;
}

inline int run_orbits(const RunConfig &c, std::ostream &out)
{
    auto rs = RootSystem::build(super_type(c));
    auto scan = regular_orbit_scan(rs, c.height, c.group_cap);
    bool ok = scan.ok();
    std::optional<XiReport> xi;
    if (rs.shape() == Shape::GL && rs.eps_count() == rs.delta_count()) {
        xi = xi_uniqueness(static_cast<int>(rs.eps_count()));
        ok = ok && xi->ok();
    }
    if (c.json) {
        Json j = to_json(scan);
        j["xi_uniqueness"] = xi ? to_json(*xi) : Json(nullptr);
        j["ok"] = ok;
        out << dump_json(j);
        return ok ? exit_ok : exit_failed;
    }
    out << to_string(rs.type()) << ": " << scan.found.size() << " regular orbit(s) inside rho0 - Q+ within height "
        << scan.height << " (" << scan.candidates << " candidates)\n";
    for (const auto &w : scan.found) {
        out << "  dominant point " << to_string(w) << "\n";
    }
    out << "  matches the classification: " << yes_no(scan.ok()) << "\n";
    if (xi) {
        out << "  xi has " << xi->solutions << " decomposition(s) over positive roots, unique: " << yes_no(xi->unique)
            << "\n";
    }
    return ok ? exit_ok : exit_failed;
}

} // namespace detail

/// Runs one command; errors are reported on `err` and mapped to exit codes.
inline int run(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    try {
        if (c.height < 0) {
            throw ValidationError("height must be non-negative");
        }
        switch (c.command) {
        case Command::build: return detail::run_build(c, out);
        case Command::pairs: return detail::run_pairs(c, out);
        case Command::diagram: return detail::run_diagram(c, out);
        case Command::verify: return detail::run_verify(c, out);
        case Command::qn: return detail::run_qn(c, out);
        case Command::orbits: return detail::run_orbits(c, out);
        }
    } catch (const ResourceError &e) {
        err << "resource limit: " << e.what() << "\n";
        return exit_resource;
    } catch (const ValidationError &e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError &e) {
        err << "not applicable: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_failed;
    }
    return exit_failed;
}

} // namespace superdenom
