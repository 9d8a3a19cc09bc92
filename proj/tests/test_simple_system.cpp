#include <gtest/gtest.h>

#include <map>
#include <set>

#include "superdenom/simple_system.hpp"

using namespace superdenom;

namespace
{

std::vector<SuperType> pair_fixtures()
{
    return {
        {Family::GL, 1, 1, {}}, {Family::GL, 2, 1, {}}, {Family::GL, 1, 2, {}}, {Family::GL, 2, 2, {}},
        {Family::GL, 3, 2, {}}, {Family::GL, 3, 3, {}}, {Family::B, 1, 1, SharpChoice::B_side},
        {Family::B, 1, 1, SharpChoice::C_side}, {Family::B, 2, 1, {}}, {Family::B, 1, 2, {}},
        {Family::B, 2, 2, SharpChoice::B_side}, {Family::B, 2, 2, SharpChoice::C_side}, {Family::B, 3, 1, {}},
        {Family::D, 2, 1, {}}, {Family::D, 3, 1, {}}, {Family::D, 3, 2, {}}, {Family::D, 4, 1, {}},
        {Family::D, 2, 2, {}}, {Family::D, 1, 2, {}}, {Family::D, 1, 3, {}}, {Family::C, 0, 2, {}},
        {Family::C, 0, 3, {}},
    };
}

// ξ_k as an ε/δ weight.
Weight xi(const RootSystem &rs, std::size_t k)
{
    const auto &x = rs.xi_map().at(k - 1);
    return x.eps ? rs.eps(x.idx) : rs.delta(x.idx);
}

} // namespace

TEST(Derive, Gl21)
{
    auto rs = RootSystem::build({Family::GL, 2, 1, {}});
    auto e = [&](int i) { return rs.eps(i); };
    auto d = rs.delta(0);
    auto sys = derive({e(0) - d, d - e(1)}, rs);
    EXPECT_EQ(std::set<Weight>(sys.positive_even.begin(), sys.positive_even.end()),
              (std::set<Weight>{e(0) - e(1)}));
    EXPECT_EQ(std::set<Weight>(sys.positive_odd.begin(), sys.positive_odd.end()),
              (std::set<Weight>{e(0) - d, d - e(1)}));
    EXPECT_EQ(sys.rho0, Rational(1, 2) * (e(0) - e(1)));
    EXPECT_EQ(sys.rho1, sys.rho0);
    EXPECT_TRUE(sys.rho.is_zero());
}

TEST(Derive, B11)
{
    auto rs = RootSystem::build({Family::B, 1, 1, SharpChoice::B_side});
    auto e = rs.eps(0), d = rs.delta(0);
    auto sys = derive({d - e, e}, rs);
    // Δ_{+,1} = {δ−ε, δ+ε, δ}: the short odd root δ contributes to ρ_1.
    EXPECT_EQ(sys.rho0, Rational(1, 2) * e + d);
    EXPECT_EQ(sys.rho1, Rational(3, 2) * d);
    EXPECT_EQ(sys.rho, Rational(1, 2) * (e - d));
}

TEST(Derive, RhoPairsHalfNormWithSimpleRoots)
{
    // (ρ, α) = (α, α)/2 for every simple root, an independent check on the half-sums.
    for (const auto &t : pair_fixtures()) {
        auto rs = RootSystem::build(t);
        for (const auto &sys : enumerate_simple_systems(rs)) {
            for (const auto &a : sys.simple_roots) {
                EXPECT_EQ(bilinear_form(sys.rho, a), bilinear_form(a, a) / 2) << to_string(t) << " " << to_string(a);
            }
        }
    }
}

TEST(Derive, Rejections)
{
    auto rs = RootSystem::build({Family::GL, 2, 1, {}});
    auto e = [&](int i) { return rs.eps(i); };
    auto d = rs.delta(0);
    EXPECT_THROW(derive({e(0) - d, e(0) - d}, rs), ValidationError);
    EXPECT_THROW(derive({e(0) - d, e(1) - d}, rs), ValidationError);
    EXPECT_THROW(derive({e(0) - d, e(0)}, rs), ValidationError);
    try {
        derive({e(0) - d, e(1) - d}, rs);
    } catch (const ValidationError &err) {
        EXPECT_NE(std::string(err.what()).find("neither"), std::string::npos);
    }
}

TEST(OddReflection, Gl21Example)
{
    auto rs = RootSystem::build({Family::GL, 2, 1, {}});
    auto e = [&](int i) { return rs.eps(i); };
    auto d = rs.delta(0);
    auto sys = derive({e(0) - d, d - e(1)}, rs);
    auto r = odd_reflection(sys, e(0) - d, rs);
    EXPECT_EQ(r.simple_roots, (std::vector<Weight>{d - e(0), e(0) - e(1)}));
    auto back = odd_reflection(r, d - e(0), rs);
    EXPECT_EQ(back.sorted_key(), sys.sorted_key());
    EXPECT_THROW(odd_reflection(sys, e(0) - e(1), rs), DomainError);
}

TEST(OddReflection, RhoShiftOnEveryEnumeratedSystem)
{
    for (const auto &t : pair_fixtures()) {
        auto rs = RootSystem::build(t);
        for (const auto &sys : enumerate_simple_systems(rs)) {
            for (const auto &b : sys.simple_roots) {
                if (!is_isotropic(b)) {
                    continue;
                }
                auto r = odd_reflection(sys, b, rs);
                EXPECT_EQ(r.rho - sys.rho, b) << to_string(t);
                std::set<Weight> before(sys.positive_odd.begin(), sys.positive_odd.end());
                std::set<Weight> after(r.positive_odd.begin(), r.positive_odd.end());
                before.erase(b);
                before.insert(-b);
                EXPECT_EQ(before, after);
            }
        }
    }
}

TEST(Admissible, Gl22Standard)
{
    auto rs = RootSystem::build({Family::GL, 2, 2, {}});
    auto e = [&](int i) { return rs.eps(i); };
    auto d = [&](int j) { return rs.delta(j); };
    std::vector<Weight> pi = {e(0) - d(0), d(0) - e(1), e(1) - d(1)};
    EXPECT_TRUE(is_admissible({e(0) - d(0), e(1) - d(1)}, pi, rs));
    auto bad = is_admissible({e(0) - d(0), d(0) - e(1)}, pi, rs);
    EXPECT_FALSE(bad);
    EXPECT_EQ(bad.failed_clause, "orthogonal");
    auto small = is_admissible({e(0) - d(0)}, pi, rs);
    EXPECT_FALSE(small);
    EXPECT_EQ(small.failed_clause, "cardinality");
    auto outside = is_admissible({e(0) - d(1), e(1) - d(0)}, pi, rs);
    EXPECT_EQ(outside.failed_clause, "subset");
}

TEST(Admissible, EvenPositiveClause)
{
    // gl(2|1) with ε_2 > ε_1 in Δ_+ has the wrong even part.
    auto rs = RootSystem::build({Family::GL, 2, 1, {}});
    auto d = rs.delta(0);
    auto res = is_admissible({rs.eps(1) - d}, {rs.eps(1) - d, d - rs.eps(0)}, rs);
    EXPECT_FALSE(res);
    EXPECT_EQ(res.failed_clause, "even_positive");
}

TEST(StandardPair, Gl32Step2)
{
    auto rs = RootSystem::build({Family::GL, 3, 2, {}});
    auto e = [&](int i) { return rs.eps(i); };
    auto d = [&](int j) { return rs.delta(j); };
    auto p = standard_pair(rs, PairVariant::step2);
    EXPECT_EQ(p.S, (std::vector<Weight>{e(0) - d(0), e(1) - d(1)}));
    EXPECT_EQ(p.pi.simple_roots, (std::vector<Weight>{e(0) - d(0), d(0) - e(1), e(1) - d(1), d(1) - e(2)}));
}

TEST(StandardPair, B21Step3)
{
    auto rs = RootSystem::build({Family::B, 2, 1, {}});
    auto e = [&](int i) { return rs.eps(i); };
    auto d = rs.delta(0);
    auto p = standard_pair(rs, PairVariant::step3);
    EXPECT_EQ(p.S, (std::vector<Weight>{d - e(1)}));
    EXPECT_EQ(p.pi.simple_roots, (std::vector<Weight>{e(0) - d, d - e(1), e(1)}));
}

TEST(StandardPair, D21Step3Prime)
{
    auto rs = RootSystem::build({Family::D, 2, 1, {}});
    auto p = standard_pair(rs, PairVariant::step3_prime);
    EXPECT_EQ(p.S, (std::vector<Weight>{rs.delta(0) + rs.eps(1)}));
    EXPECT_THROW(standard_pair(RootSystem::build({Family::D, 1, 2, {}}), PairVariant::step3_prime), DomainError);
    EXPECT_THROW(standard_pair(RootSystem::build({Family::Q, 0, 3, {}}), PairVariant::step2), DomainError);
}

TEST(StandardPair, BnnBothSharpChoices)
{
    for (auto sc : {SharpChoice::B_side, SharpChoice::C_side}) {
        auto rs = RootSystem::build({Family::B, 2, 2, sc});
        auto p = standard_pair(rs, PairVariant::step2);
        auto e = [&](int i) { return rs.eps(i); };
        auto d = [&](int j) { return rs.delta(j); };
        EXPECT_EQ(p.S, (std::vector<Weight>{d(0) - e(0), d(1) - e(1)}));
        EXPECT_EQ(p.pi.simple_roots.back(), e(1));
        EXPECT_EQ(rs.is_even_root(e(1)), sc == SharpChoice::B_side);
    }
}

TEST(StandardPair, AllVariantsAdmissibleWithNonnegativeNorms)
{
    for (const auto &t : pair_fixtures()) {
        auto rs = RootSystem::build(t);
        for (auto v : applicable_variants(rs)) {
            auto p = standard_pair(rs, v);
            EXPECT_TRUE(is_admissible(p.S, p.pi.simple_roots, rs)) << to_string(t) << " " << to_string(v);
            for (const auto &a : p.pi.simple_roots) {
                EXPECT_GE(bilinear_form(a, a), 0) << to_string(t) << " " << to_string(v) << " " << to_string(a);
            }
        }
    }
}

TEST(Functional, A41Example)
{
    auto rs = RootSystem::build({Family::GL, 5, 2, {}});
    auto x = [&](std::size_t k) { return xi(rs, k); };
    auto sys = derive({x(1) - x(2), x(2) - x(6), x(6) - x(7), x(7) - x(3), x(3) - x(4), x(4) - x(5)}, rs);
    auto f = functional_for(sys, rs);
    // f = ξ5* + 2ξ4* + 3ξ3* + 4ξ7* + 5ξ6* + 6ξ2* + 7ξ1*.
    EXPECT_EQ(f.xi, (std::vector<Rational>{7, 6, 3, 2, 1, 5, 4}));
}

TEST(Functional, B22Example)
{
    // Δ^# on the second factor: the C side.
    auto rs = RootSystem::build({Family::B, 2, 2, SharpChoice::C_side});
    auto x = [&](std::size_t k) { return xi(rs, k); };
    auto sys = derive({x(1) - x(3), x(3) - x(2), x(2) - x(4), x(4)}, rs);
    auto f = functional_for(sys, rs);
    EXPECT_EQ(f.xi, (std::vector<Rational>{4, 2, 3, 1}));
}

TEST(Functional, PropertiesOnAllEnumeratedSystems)
{
    for (const auto &t : pair_fixtures()) {
        auto rs = RootSystem::build(t);
        if (rs.shape() == Shape::C) {
            continue;
        }
        for (const auto &sys : enumerate_simple_systems(rs)) {
            Functional f;
            ASSERT_NO_THROW(f = functional_for(sys, rs)) << to_string(t);
            for (const auto &a : sys.simple_roots) {
                EXPECT_EQ(f(a), 1);
            }
            if (rs.shape() == Shape::GL) {
                EXPECT_EQ(*std::min_element(f.xi.begin(), f.xi.end()), 1);
            }
        }
    }
}

TEST(SecondTypeMove, Gl31)
{
    auto rs = RootSystem::build({Family::GL, 3, 1, {}});
    auto e = [&](int i) { return rs.eps(i); };
    auto d = rs.delta(0);
    auto p = standard_pair(rs, PairVariant::step2);
    ASSERT_EQ(p.S, (std::vector<Weight>{e(0) - d}));
    auto q = second_type_move(p, e(0) - d, d - e(1), rs);
    EXPECT_EQ(q.S, (std::vector<Weight>{d - e(1)}));
    auto back = second_type_move(q, d - e(1), e(0) - d, rs);
    EXPECT_EQ(back.S, p.S);
    EXPECT_TRUE(is_admissible(q.S, q.pi.simple_roots, rs));
}

TEST(SecondTypeMove, HypothesisViolations)
{
    auto rs = RootSystem::build({Family::GL, 2, 2, {}});
    auto e = [&](int i) { return rs.eps(i); };
    auto d = [&](int j) { return rs.delta(j); };
    auto p = standard_pair(rs, PairVariant::step2);
    // γ′ = δ_1−ε_2 is not orthogonal to ε_2−δ_2 ∈ S∖{γ}.
    try {
        second_type_move(p, e(0) - d(0), d(0) - e(1), rs);
        FAIL();
    } catch (const DomainError &err) {
        EXPECT_NE(std::string(err.what()).find("orthogonal"), std::string::npos);
    }
    EXPECT_THROW(second_type_move(p, e(0) - d(1), d(0) - e(1), rs), DomainError);
}

TEST(Enumeration, PiDeterminedByS)
{
    for (const auto &t : pair_fixtures()) {
        auto rs = RootSystem::build(t);
        if (rs.dim() > 5) {
            continue;
        }
        std::map<std::vector<Weight>, std::set<std::vector<Weight>>> by_s;
        for (const auto &p : enumerate_admissible_pairs(rs)) {
            EXPECT_EQ(p.S.size(), rs.defect());
            by_s[p.sorted_s()].insert(p.pi.sorted_key());
        }
        for (const auto &[s, pis] : by_s) {
            EXPECT_EQ(pis.size(), 1u) << to_string(t);
        }
    }
}

TEST(Enumeration, Gl21HasThreeSystems)
{
    // Three placements of δ_1 among ε_1 > ε_2.
    auto rs = RootSystem::build({Family::GL, 2, 1, {}});
    EXPECT_EQ(enumerate_simple_systems(rs).size(), 3u);
    EXPECT_EQ(enumerate_simple_systems(RootSystem::build({Family::GL, 3, 3, {}})).size(), 20u);
}

TEST(Enumeration, PositiveRootsDecompose)
{
    for (const auto &t : pair_fixtures()) {
        auto rs = RootSystem::build(t);
        for (const auto &sys : enumerate_simple_systems(rs)) {
            for (const auto &a : sys.positive_roots()) {
                auto c = in_positive_cone(a, sys.basis, ConeRing::integer);
                ASSERT_TRUE(c);
                EXPECT_EQ(sys.basis.reconstruct(c->coeffs), a);
            }
        }
    }
}
