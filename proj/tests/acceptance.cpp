// Acceptance suite: one PASS/FAIL line per criterion, details for every failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "superdenom/superdenom.hpp"

using namespace superdenom;

namespace
{

constexpr int identity_height = 8;
constexpr double case_limit_s = 60.0;

struct Outcome {
    bool ok = true;
    std::vector<std::string> failures;
    std::string summary;

    void require(bool cond, const std::string &what)
    {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

struct Fixture {
    SuperType type;
    std::string label;
};

std::vector<Fixture> fixtures()
{
    std::vector<Fixture> out;
    auto add = [&](SuperType t) { out.push_back({t, to_string(t)}); };
    for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}}) {
        add({Family::GL, m, n, {}});
    }
    add({Family::B, 1, 1, SharpChoice::B_side});
    add({Family::B, 1, 1, SharpChoice::C_side});
    add({Family::B, 2, 1, {}});
    add({Family::B, 1, 2, {}});
    add({Family::B, 2, 2, SharpChoice::B_side});
    add({Family::B, 2, 2, SharpChoice::C_side});
    add({Family::D, 2, 1, {}});
    add({Family::D, 2, 2, {}});
    add({Family::D, 1, 2, {}});
    add({Family::C, 0, 2, {}});
    add({Family::C, 0, 3, {}});
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string describe(const VerificationReport &r)
{
    std::ostringstream s;
    s << to_string(r.system) << " " << r.variant << " H=" << r.height;
    if (r.first_discrepancy) {
        s << " lhs/rhs differ at e^(" << to_string(r.first_discrepancy->exponent) << ")";
    }
    if (r.expanded_discrepancy) {
        s << " closed/expanded differ at e^(" << to_string(r.expanded_discrepancy->exponent) << ")";
    }
    if (r.symbolic && !*r.symbolic) {
        s << " symbolic check failed";
    }
    return s.str();
}

// Reports from criterion 1, reused by criteria 2 and 7.
std::map<std::string, std::vector<VerificationReport>> identity_reports;

Outcome identity()
{
    Outcome o;
    std::size_t cases = 0;
    double slowest = 0;
    for (const auto &f : fixtures()) {
        auto rs = RootSystem::build(f.type);
        for (auto v : applicable_variants(rs)) {
            auto t0 = std::chrono::steady_clock::now();
            VerifyOptions opt;
            opt.height = identity_height;
            auto r = verify(rs, v, opt);
            double dt = seconds_since(t0);
            slowest = std::max(slowest, dt);
            ++cases;
            o.require(r.equal && r.expanded_equal && r.symbolic.value_or(true), describe(r));
            o.require(dt <= case_limit_s, f.label + " " + to_string(v) + " took " + std::to_string(dt) + " s");
            identity_reports[f.label].push_back(std::move(r));
        }
    }
    auto gl21 = RootSystem::build({Family::GL, 2, 1, {}});
    VerifyOptions deep;
    deep.height = 14;
    auto r = verify(gl21, PairVariant::step2, deep);
    o.require(r.equal && r.expanded_equal, "deep: " + describe(r));
    o.require(r.symbolic.value_or(false), "gl(2|1) closed-form cross-multiplication");
    std::ostringstream s;
    s << cases << " cases at H=8, slowest " << static_cast<int>(slowest * 1000) << " ms; gl(2|1) at H=14 and symbolic";
    o.summary = s.str();
    return o;
}

Outcome e_rho()
{
    Outcome o;
    std::size_t pairs = 0;
    for (const auto &[label, reports] : identity_reports) {
        for (const auto &r : reports) {
            ++pairs;
            o.require(r.e_rho_coefficient == 1,
                      label + " " + r.variant + ": e^rho coefficient " + to_string(r.e_rho_coefficient));
        }
    }
    for (auto [m, n] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
        auto rs = RootSystem::build({Family::D, m, n, {}});
        const std::size_t M = rs.eps_count(), N = rs.delta_count();
        Weight a = rs.eps(M - 2), b = rs.eps(M - 1);
        auto s1 = reflection(a - b), s2 = reflection(a + b);
        std::set<std::vector<int>> expect;
        for (const auto &w : {SignedPermutation::identity(M, N), s1, s1 * s2}) {
            expect.insert(w.key());
        }
        auto got = e_rho_coefficient_set(standard_pair(rs, PairVariant::step2_prime), rs);
        std::set<std::vector<int>> keys;
        int sum = 0;
        for (const auto &w : got) {
            keys.insert(w.key());
            sum += w.sgn();
        }
        std::string label = to_string(rs.type());
        o.require(keys == expect, label + ": A-set has " + std::to_string(got.size()) + " elements");
        o.require(sum == 1, label + ": A-set sign sum " + std::to_string(sum));
    }
    o.summary = std::to_string(pairs) + " standard pairs; A-sets of D(2,1), D(3,1), D(3,2)";
    return o;
}

// Sets of pairwise orthogonal positive roots e_i - e_j with fewer than [n/2] elements.
std::vector<std::vector<Weight>> small_s_sets(const RootSystem &rs)
{
    const std::size_t n = rs.eps_count();
    std::vector<std::vector<Weight>> out;
    std::function<void(std::vector<Weight> &, std::vector<bool> &, std::size_t)> grow =
        [&](std::vector<Weight> &cur, std::vector<bool> &used, std::size_t from) {
            out.push_back(cur);
            if (cur.size() + 1 >= n / 2) {
                return;
            }
            for (std::size_t i = from; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (used[i] || used[j]) {
                        continue;
                    }
                    used[i] = used[j] = true;
                    cur.push_back(rs.eps(i) - rs.eps(j));
                    grow(cur, used, i + 1);
                    cur.pop_back();
                    used[i] = used[j] = false;
                }
            }
        };
    std::vector<Weight> cur;
    std::vector<bool> used(n, false);
    grow(cur, used, 0);
    return out;
}

Outcome qn()
{
    Outcome o;
    std::ostringstream s;
    std::size_t small = 0;
    for (int n = 2; n <= 6; ++n) {
        auto rs = RootSystem::build({Family::Q, n, n, {}});
        auto r = qn_identity(n, qn_standard_s(rs), identity_height);
        s << (n > 2 ? "," : "") << to_string(r.a_S);
        o.require(r.expected_abs && r.ok(),
                  "Q(" + std::to_string(n) + "): a(S) = " + to_string(r.a_S) +
                      (r.equal ? "" : ", identity differs"));
        if (n > 5) {
            continue;
        }
        for (const auto &S : small_s_sets(rs)) {
            ++small;
            auto z = qn_identity(n, S, identity_height);
            o.require(z.a_S == 0 && z.equal,
                      "Q(" + std::to_string(n) + ") |S|=" + std::to_string(S.size()) + ": a(S) = " + to_string(z.a_S));
        }
    }
    o.summary = "a(S) for n=2..6: " + s.str() + "; " + std::to_string(small) + " small S all zero";
    return o;
}

Outcome classes()
{
    Outcome o;
    std::vector<std::pair<SuperType, std::size_t>> cases;
    for (int m = 1; m <= 5; ++m) {
        for (int n = 1; m + n <= 6; ++n) {
            if (m >= n) {
                cases.push_back({{Family::GL, m, n, {}}, 1});
            }
        }
    }
    for (int m = 1; m <= 4; ++m) {
        for (int n = 1; m + n <= 5; ++n) {
            cases.push_back({{Family::B, m, n, {}}, 1});
            if (m == n) {
                cases.push_back({{Family::B, m, n, SharpChoice::C_side}, 1});
            }
        }
    }
    for (int m = 1; m <= 3; ++m) {
        for (int n = m; m + n <= 6; ++n) {
            cases.push_back({{Family::D, m, n, {}}, 1});
        }
    }
    for (auto [m, n] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
        cases.push_back({{Family::D, m, n, {}}, 2});
    }
    std::size_t pairs = 0, merged = 0;
    for (const auto &[t, want] : cases) {
        auto rs = RootSystem::build(t);
        auto rep = equivalence_classes(rs);
        pairs += rep.pair_count;
        merged += rep.lemma_components == 1 && want == 2;
        o.require(rep.components == want && rep.expected == want,
                  to_string(t) + ": " + std::to_string(rep.components) + " classes, expected " + std::to_string(want));
        o.require(rep.pi_determined_by_s, to_string(t) + ": Pi not determined by S");
        o.require(rep.consistent, to_string(t) + ": canonical forms inconsistent");
    }
    o.summary = std::to_string(cases.size()) + " systems, " + std::to_string(pairs) +
                " admissible pairs; unrestricted exchanges merge " + std::to_string(merged) + " of the 3 D(m>n) cases";
    return o;
}

void absorb(Outcome &o, const Check &c, const std::string &label)
{
    o.require(c.ok, label + " " + c.name + ": " + c.detail);
}

Outcome lemmas()
{
    Outcome o;
    std::size_t checks = 0;
    for (const auto &f : fixtures()) {
        auto rs = RootSystem::build(f.type);
        absorb(o, orbit_dichotomy_check(rs), f.label);
        ++checks;
        if (rs.shape() == Shape::C) {
            continue;
        }
        absorb(o, rho_shift_check(rs), f.label);
        absorb(o, pair_equivalence_check(rs, identity_height), f.label);
        checks += 2;
        for (auto v : applicable_variants(rs)) {
            auto p = standard_pair(rs, v);
            absorb(o, rho_cone_check(p, rs), f.label + " " + to_string(v));
            ++checks;
            if (rho_stabilizer_applies(rs)) {
                absorb(o, rho_stabilizer_check(p, rs), f.label + " " + to_string(v));
                ++checks;
            }
        }
    }
    o.summary = std::to_string(checks) + " checks over " + std::to_string(fixtures().size()) + " fixtures";
    return o;
}

Outcome orbits()
{
    Outcome o;
    constexpr int height = 10;
    std::ostringstream s;
    for (auto t : {SuperType{Family::GL, 2, 1, {}}, SuperType{Family::GL, 3, 2, {}}, SuperType{Family::C, 0, 2, {}},
                   SuperType{Family::C, 0, 3, {}}, SuperType{Family::GL, 2, 2, {}}, SuperType{Family::GL, 3, 3, {}}}) {
        auto rs = RootSystem::build(t);
        auto scan = regular_orbit_scan(rs, height);
        s << to_string(t) << ":" << scan.found.size() << " ";
        o.require(scan.ok(), to_string(t) + ": " + std::to_string(scan.found.size()) + " orbits, expected " +
                                 std::to_string(scan.expected.size()));
    }
    for (int n = 1; n <= 3; ++n) {
        auto got = glnn_xi_coefficients(n, 4);
        for (int k = 0; k <= 4; ++k) {
            Rational want = (k * n) % 2 == 0 ? 1 : -1;
            o.require(k < static_cast<int>(got.size()) && got[k] == want,
                      "gl(" + std::to_string(n) + "|" + std::to_string(n) + ") coefficient of e^(-" + std::to_string(k) +
                          "xi)");
        }
    }
    for (int n = 1; n <= 4; ++n) {
        auto xi = xi_uniqueness(n);
        o.require(xi.ok(), "xi uniqueness n=" + std::to_string(n) + ": " + std::to_string(xi.solutions) +
                               " decompositions");
    }
    o.summary = s.str() + "at height 10; xi coefficients s<=4, n<=3; xi unique n<=4";
    return o;
}

Outcome skew()
{
    Outcome o;
    std::size_t generators = 0, identities = 0;
    for (const auto &[label, reports] : identity_reports) {
        for (const auto &r : reports) {
            o.require(r.skew_checked && r.skew_ok,
                      label + " " + r.variant + ": skew fails" +
                          (r.skew_generator ? " for " + to_string(*r.skew_generator) : std::string()));
            ++generators;
        }
    }
    for (const auto &f : fixtures()) {
        auto rs = RootSystem::build(f.type);
        if (rs.shape() == Shape::C) {
            continue;
        }
        for (const auto &c : generator_identities(rs, identity_height)) {
            absorb(o, c, f.label);
            ++identities;
        }
    }
    o.summary = std::to_string(generators) + " skew sweeps, " + std::to_string(identities) + " generator identities";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 identity", identity}, {"2 e^rho coefficient", e_rho}, {"3 Q(n)", qn},
        {"4 equivalence classes", classes}, {"5 lemma suite", lemmas}, {"6 regular orbits", orbits},
        {"7 skew-invariance", skew}};
    bool all = true;
    for (const auto &[name, fn] : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        all = all && o.ok;
        std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << o.summary << " ["
                  << static_cast<int>(seconds_since(t0)) << " s]\n";
        for (const auto &f : o.failures) {
            std::cout << "    " << f << "\n";
        }
        std::cout.flush();
    }
    return all ? 0 : 1;
}
