#include <gtest/gtest.h>

#include <set>

#include "superdenom/weyl_group.hpp"

using namespace superdenom;

namespace
{

std::vector<SuperType> small_fixtures()
{
    return {
        {Family::GL, 2, 1, {}}, {Family::GL, 2, 2, {}}, {Family::GL, 3, 2, {}},
        {Family::B, 1, 1, SharpChoice::B_side}, {Family::B, 1, 1, SharpChoice::C_side}, {Family::B, 2, 1, {}},
        {Family::B, 1, 2, {}}, {Family::D, 2, 1, {}}, {Family::D, 2, 2, {}}, {Family::D, 1, 2, {}},
        {Family::C, 0, 2, {}}, {Family::C, 0, 3, {}},
    };
}

} // namespace

TEST(Reflection, Examples)
{
    auto rs = RootSystem::build({Family::B, 2, 1, {}});
    auto s12 = reflection(rs.eps(0) - rs.eps(1));
    EXPECT_EQ(s12.eps_images(), (std::vector<int>{2, 1}));
    auto s1 = reflection(rs.eps(0));
    EXPECT_EQ(s1.eps_images(), (std::vector<int>{-1, 2}));
    auto sd = reflection(Rational(2) * rs.delta(0));
    EXPECT_EQ(sd.delta_images(), (std::vector<int>{-1}));
    EXPECT_EQ(sd, reflection(rs.delta(0)));
    EXPECT_THROW(reflection(rs.eps(0) - rs.delta(0)), DomainError);
}

TEST(Reflection, MatchesFormulaOnRoots)
{
    for (const auto &t : small_fixtures()) {
        auto rs = RootSystem::build(t);
        for (const auto &a : rs.positive_even()) {
            auto s = reflection(a);
            for (const auto &l : rs.odd()) {
                Weight expect = l - (Rational(2) * bilinear_form(l, a) / bilinear_form(a, a)) * a;
                EXPECT_EQ(s.act(l), expect);
            }
        }
    }
}

TEST(Sgn, Examples)
{
    auto id = SignedPermutation::identity(3, 0);
    EXPECT_EQ(id.sgn(), 1);
    auto rs = RootSystem::build({Family::D, 3, 1, {}});
    auto t = reflection(rs.eps(1) - rs.eps(2));
    EXPECT_EQ(t.sgn(), -1);
    auto u = reflection(rs.eps(1) + rs.eps(2));
    EXPECT_EQ((t * u).sgn(), 1);
}

TEST(Sgn, IsHomomorphismOnSmallGroups)
{
    for (const auto &t : {SuperType{Family::B, 2, 1, {}}, SuperType{Family::D, 3, 1, {}}}) {
        auto rs = RootSystem::build(t);
        auto all = enumerate(weyl_groups(rs).full);
        for (const auto &u : all) {
            for (const auto &v : all) {
                ASSERT_EQ((u * v).sgn(), u.sgn() * v.sgn());
            }
        }
    }
}

TEST(Enumerate, Orders)
{
    auto gl3 = RootSystem::build({Family::GL, 3, 1, {}});
    EXPECT_EQ(enumerate(weyl_groups(gl3).sharp).size(), 6u);
    auto d21 = RootSystem::build({Family::D, 2, 1, {}});
    EXPECT_EQ(enumerate(weyl_groups(d21).sharp).size(), 4u);
    auto b21 = RootSystem::build({Family::B, 2, 1, {}});
    EXPECT_EQ(enumerate(weyl_groups(b21).full).size(), 16u);
    for (const auto &t : small_fixtures()) {
        auto rs = RootSystem::build(t);
        auto g = weyl_groups(rs);
        EXPECT_EQ(enumerate(g.full).size(), g.full.order) << to_string(t);
        EXPECT_EQ(enumerate(g.sharp).size(), g.sharp.order) << to_string(t);
        EXPECT_EQ(enumerate(g.second).size(), g.second.order) << to_string(t);
        EXPECT_EQ(g.full.order, g.sharp.order * g.second.order);
    }
}

TEST(Enumerate, DeterministicAndUnique)
{
    auto rs = RootSystem::build({Family::B, 2, 1, {}});
    auto a = enumerate(weyl_groups(rs).full);
    auto b = enumerate(weyl_groups(rs).full);
    EXPECT_EQ(a, b);
    std::set<std::vector<int>> keys;
    for (const auto &w : a) {
        keys.insert(w.key());
    }
    EXPECT_EQ(keys.size(), a.size());
    EXPECT_TRUE(a.front().is_identity());
}

TEST(Enumerate, CapRaisesResourceError)
{
    auto rs = RootSystem::build({Family::B, 3, 2, {}});
    auto g = weyl_groups(rs).full;
    try {
        enumerate(g, 10);
        FAIL() << "expected ResourceError";
    } catch (const ResourceError &e) {
        EXPECT_NE(std::string(e.what()).find(std::to_string(g.order)), std::string::npos);
    }
}

TEST(Enumerate, DTypeFlipsEvenly)
{
    auto rs = RootSystem::build({Family::D, 1, 2, {}});
    auto g = weyl_groups(rs);
    for (const auto &w : enumerate(g.second)) {
        EXPECT_EQ(w.delta_flips() % 2, 0u);
    }
    ASSERT_EQ(g.external.size(), rs.delta_count());
    EXPECT_EQ(g.external[0].tag(), GroupTag::external);
    // s_{δ_1} preserves Δ but is not in W_2.
    auto all = enumerate(g.second);
    EXPECT_EQ(std::find(all.begin(), all.end(), g.external[0]), all.end());
    std::set<Weight> odd(rs.odd().begin(), rs.odd().end());
    for (const auto &a : rs.odd()) {
        EXPECT_TRUE(odd.count(g.external[0].act(a)));
    }
}

TEST(Action, FaithfulAndStable)
{
    for (const auto &t : small_fixtures()) {
        auto rs = RootSystem::build(t);
        std::set<Weight> even(rs.even().begin(), rs.even().end());
        std::set<Weight> odd(rs.odd().begin(), rs.odd().end());
        for (const auto &w : enumerate(weyl_groups(rs).full)) {
            bool moves = false;
            for (std::size_t k = 0; k < rs.dim(); ++k) {
                Weight b = k < rs.eps_count() ? rs.eps(k) : rs.delta(k - rs.eps_count());
                moves = moves || w.act(b) != b;
            }
            EXPECT_EQ(moves, !w.is_identity());
            for (const auto &a : rs.positive_even()) {
                EXPECT_TRUE(even.count(w.act(a)));
            }
            std::set<Weight> img;
            for (const auto &a : rs.odd()) {
                img.insert(w.act(a));
            }
            EXPECT_EQ(img, odd) << to_string(t);
        }
    }
}

TEST(Composition, AssociativeWithInverse)
{
    auto rs = RootSystem::build({Family::B, 2, 1, {}});
    auto all = enumerate(weyl_groups(rs).full);
    auto lam = Weight(2, std::vector<Rational>{3, Rational(1, 2), -5});
    for (const auto &u : all) {
        EXPECT_TRUE((u * u.inverse()).is_identity());
        for (const auto &v : all) {
            EXPECT_EQ((u * v).act(lam), u.act(v.act(lam)));
        }
    }
}

TEST(Stabilizer, Examples)
{
    auto rs = RootSystem::build({Family::B, 2, 1, {}});
    auto g = weyl_groups(rs).full;
    auto generic = Weight(2, std::vector<Rational>{3, 1, 2});
    EXPECT_EQ(stabilizer(generic, g).order, 1u);
    auto zero = rs.zero();
    EXPECT_EQ(stabilizer(zero, g).order, g.order);
}

TEST(Stabilizer, GeneratorsGenerate)
{
    auto rs = RootSystem::build({Family::B, 2, 1, {}});
    auto g = weyl_groups(rs).full;
    auto lam = Weight(2, std::vector<Rational>{1, 0, 0});
    auto st = stabilizer(lam, g);
    GroupDescriptor h = st;
    h.order = st.order;
    EXPECT_EQ(enumerate(h).size(), st.order);
    for (const auto &w : enumerate(h)) {
        EXPECT_EQ(w.act(lam), lam);
    }
}

TEST(Dichotomy, HoldsOnGrids)
{
    for (const auto &t : small_fixtures()) {
        auto rs = RootSystem::build(t);
        auto g = weyl_groups(rs).full;
        std::vector<Rational> vals = {-1, 0, Rational(1, 2), 1};
        std::size_t d = rs.dim();
        std::vector<std::size_t> idx(d, 0);
        while (true) {
            Weight lam = rs.zero();
            for (std::size_t k = 0; k < d; ++k) {
                lam[k] = vals[idx[k]];
            }
            EXPECT_TRUE(check_stabilizer_dichotomy(lam, g)) << to_string(lam);
            std::size_t k = 0;
            while (k < d && ++idx[k] == vals.size()) {
                idx[k++] = 0;
            }
            if (k == d) {
                break;
            }
        }
    }
}

TEST(Dichotomy, ReflectionBranchAtRho0)
{
    // ρ_0 of gl(2|2) fixes nothing, but a degenerate λ = ε_1+ε_2 is fixed by s_{ε_1−ε_2}.
    auto rs = RootSystem::build({Family::GL, 2, 2, {}});
    auto g = weyl_groups(rs).full;
    auto lam = rs.eps(0) + rs.eps(1);
    auto st = stabilizer(lam, g);
    EXPECT_GT(st.order, 1u);
    EXPECT_TRUE(check_stabilizer_dichotomy(lam, g));
    bool has_reflection = false;
    for (const auto &w : enumerate(st)) {
        has_reflection = has_reflection || w == reflection(rs.eps(0) - rs.eps(1));
    }
    EXPECT_TRUE(has_reflection);
}

TEST(ShiftedCone, RegularOrbitsIntersect)
{
    for (const auto &t : small_fixtures()) {
        auto rs = RootSystem::build(t);
        EvenPart g0(rs);
        EXPECT_TRUE(orbit_intersects_shifted_cone(g0.rho0, g0)) << to_string(t);
    }
    auto rs = RootSystem::build({Family::B, 2, 1, {}});
    EvenPart g0(rs);
    EXPECT_THROW(orbit_intersects_shifted_cone(Rational(1, 3) * rs.eps(0), g0), DomainError);
}

TEST(ShiftedCone, DominantRepresentativeIsMaximal)
{
    auto rs = RootSystem::build({Family::B, 2, 1, {}});
    EvenPart g0(rs);
    auto lam = Weight(2, std::vector<Rational>{-2, 1, 3});
    auto dom = g0.dominant_representative(lam);
    EXPECT_TRUE(g0.is_dominant(dom));
    for (const auto &mu : g0.orbit(lam)) {
        EXPECT_TRUE(in_positive_cone(dom - mu, g0.basis, ConeRing::rational)) << to_string(mu);
    }
}

TEST(Printing, CycleNotation)
{
    auto rs = RootSystem::build({Family::B, 2, 1, {}});
    auto w = reflection(rs.eps(0) - rs.eps(1)) * reflection(rs.delta(0));
    EXPECT_EQ(to_string(w), "e(1 2) d() signs e[+,+] d[-]");
}
