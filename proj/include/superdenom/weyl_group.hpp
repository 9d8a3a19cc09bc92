// Signed-permutation realizations of W, W^#, W_2 and the regular-orbit tools built on them.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "lattice.hpp"
#include "root_system.hpp"

namespace superdenom
{

enum class GroupTag { full_W, W_sharp, W_2, external };

inline std::string to_string(GroupTag t)
{
    switch (t) {
    case GroupTag::full_W: return "full_W";
    case GroupTag::W_sharp: return "W_sharp";
    case GroupTag::W_2: return "W_2";
    case GroupTag::external: return "external";
    }
    return "?";
}

/// w(ε_i) = ±ε_{p(i)}, w(δ_j) = ±δ_{q(j)}. Images are stored as signed 1-based indices.
class SignedPermutation
{
public:
    SignedPermutation() = default;
    SignedPermutation(std::vector<int> eps_images, std::vector<int> delta_images,
                      GroupTag tag = GroupTag::full_W)
        : eps_(std::move(eps_images)), delta_(std::move(delta_images)), tag_(tag)
    {
        check_block(eps_);
        check_block(delta_);
    }

    static SignedPermutation identity(std::size_t m, std::size_t n, GroupTag tag = GroupTag::full_W)
    {
        std::vector<int> e(m), d(n);
        for (std::size_t i = 0; i < m; ++i) {
            e[i] = static_cast<int>(i) + 1;
        }
        for (std::size_t j = 0; j < n; ++j) {
            d[j] = static_cast<int>(j) + 1;
        }
        return SignedPermutation(std::move(e), std::move(d), tag);
    }

    std::size_t m() const noexcept { return eps_.size(); }
    std::size_t n() const noexcept { return delta_.size(); }
    GroupTag tag() const noexcept { return tag_; }
    SignedPermutation with_tag(GroupTag t) const
    {
        SignedPermutation w = *this;
        w.tag_ = t;
        return w;
    }

    const std::vector<int> &eps_images() const noexcept { return eps_; }
    const std::vector<int> &delta_images() const noexcept { return delta_; }

    bool is_identity() const
    {
        for (std::size_t i = 0; i < eps_.size(); ++i) {
            if (eps_[i] != static_cast<int>(i) + 1) {
                return false;
            }
        }
        for (std::size_t j = 0; j < delta_.size(); ++j) {
            if (delta_[j] != static_cast<int>(j) + 1) {
                return false;
            }
        }
        return true;
    }

    Weight act(const Weight &lambda) const
    {
        if (lambda.m() != m() || lambda.n() != n()) {
            throw StructuralError("signed permutation acts on a weight of different rank");
        }
        Weight out(m(), n());
        for (std::size_t i = 0; i < eps_.size(); ++i) {
            const Rational &c = lambda.eps_coord(i);
            if (c != 0) {
                std::size_t t = static_cast<std::size_t>(std::abs(eps_[i]) - 1);
                out.eps_coord(t) = eps_[i] > 0 ? c : Rational(-c);
            }
        }
        for (std::size_t j = 0; j < delta_.size(); ++j) {
            const Rational &c = lambda.delta_coord(j);
            if (c != 0) {
                std::size_t t = static_cast<std::size_t>(std::abs(delta_[j]) - 1);
                out.delta_coord(t) = delta_[j] > 0 ? c : Rational(-c);
            }
        }
        return out;
    }

    /// Composition (u*v)λ = u(vλ).
    friend SignedPermutation operator*(const SignedPermutation &u, const SignedPermutation &v)
    {
        if (u.m() != v.m() || u.n() != v.n()) {
            throw StructuralError("composing signed permutations of different rank");
        }
        auto compose = [](const std::vector<int> &a, const std::vector<int> &b) {
            std::vector<int> out(b.size());
            for (std::size_t i = 0; i < b.size(); ++i) {
                int img = a[static_cast<std::size_t>(std::abs(b[i]) - 1)];
                out[i] = b[i] > 0 ? img : -img;
            }
            return out;
        };
        GroupTag tag = u.tag_ == v.tag_ ? u.tag_ : GroupTag::full_W;
        return SignedPermutation(compose(u.eps_, v.eps_), compose(u.delta_, v.delta_), tag);
    }

    SignedPermutation inverse() const
    {
        auto inv = [](const std::vector<int> &a) {
            std::vector<int> out(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                int t = std::abs(a[i]) - 1;
                out[static_cast<std::size_t>(t)] = a[i] > 0 ? static_cast<int>(i) + 1 : -(static_cast<int>(i) + 1);
            }
            return out;
        };
        return SignedPermutation(inv(eps_), inv(delta_), tag_);
    }

    /// Determinant of w as a linear map on V.
    int sgn() const { return block_sign(eps_) * block_sign(delta_); }

    /// Equality ignores the group tag.
    friend bool operator==(const SignedPermutation &a, const SignedPermutation &b)
    {
        return a.eps_ == b.eps_ && a.delta_ == b.delta_;
    }
    friend bool operator<(const SignedPermutation &a, const SignedPermutation &b)
    {
        if (a.eps_ != b.eps_) {
            return a.eps_ < b.eps_;
        }
        return a.delta_ < b.delta_;
    }

    std::vector<int> key() const
    {
        std::vector<int> k = eps_;
        k.push_back(0);
        k.insert(k.end(), delta_.begin(), delta_.end());
        return k;
    }

    /// Number of negated coordinates in each block.
    std::size_t eps_flips() const { return flips(eps_); }
    std::size_t delta_flips() const { return flips(delta_); }

private:
    static std::size_t flips(const std::vector<int> &a)
    {
        return static_cast<std::size_t>(std::count_if(a.begin(), a.end(), [](int x) { return x < 0; }));
    }
    static void check_block(const std::vector<int> &a)
    {
        std::vector<bool> seen(a.size(), false);
        for (int x : a) {
            int t = std::abs(x) - 1;
            if (x == 0 || t >= static_cast<int>(a.size()) || seen[static_cast<std::size_t>(t)]) {
                throw StructuralError("not a signed permutation");
            }
            seen[static_cast<std::size_t>(t)] = true;
        }
    }
    static int block_sign(const std::vector<int> &a)
    {
        int s = 1;
        std::vector<bool> seen(a.size(), false);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < 0) {
                s = -s;
            }
            if (seen[i]) {
                continue;
            }
            std::size_t len = 0;
            std::size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = static_cast<std::size_t>(std::abs(a[j]) - 1);
                ++len;
            }
            if (len % 2 == 0) {
                s = -s;
            }
        }
        return s;
    }

    std::vector<int> eps_, delta_;
    GroupTag tag_ = GroupTag::full_W;
};

/// Cycle notation on ε then δ, with sign vectors, e.g. "e(1 2) d() signs e[+,+] d[-]".
inline std::string to_string(const SignedPermutation &w)
{
    auto block = [](const std::vector<int> &a) {
        std::string s;
        std::vector<bool> seen(a.size(), false);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (seen[i] || std::abs(a[i]) - 1 == static_cast<int>(i)) {
                seen[i] = true;
                continue;
            }
            s += "(";
            std::size_t j = i;
            bool first = true;
            while (!seen[j]) {
                seen[j] = true;
                if (!first) {
                    s += " ";
                }
                s += std::to_string(j + 1);
                first = false;
                j = static_cast<std::size_t>(std::abs(a[j]) - 1);
            }
            s += ")";
        }
        std::string signs = "[";
        for (std::size_t i = 0; i < a.size(); ++i) {
            signs += (i ? "," : "");
            signs += a[i] > 0 ? "+" : "-";
        }
        signs += "]";
        return std::make_pair(s, signs);
    };
    auto [ec, es] = block(w.eps_images());
    auto [dc, ds] = block(w.delta_images());
    return "e" + (ec.empty() ? std::string("()") : ec) + " d" + (dc.empty() ? std::string("()") : dc) +
           " signs e" + es + " d" + ds;
}

/// s_α: λ ↦ λ − 2(λ,α)/(α,α)·α, realized as a signed permutation.
inline SignedPermutation reflection(const Weight &alpha, GroupTag tag = GroupTag::full_W)
{
    Rational aa = bilinear_form(alpha, alpha);
    if (aa == 0) {
        throw DomainError("reflection along isotropic weight " + to_string(alpha));
    }
    const std::size_t m = alpha.m(), n = alpha.n();
    std::vector<int> e(m), d(n);
    for (std::size_t k = 0; k < m + n; ++k) {
        Weight b = k < m ? Weight::eps(m, n, k) : Weight::delta(m, n, k - m);
        Weight img = b - (Rational(2) * bilinear_form(b, alpha) / aa) * alpha;
        int found = 0;
        for (std::size_t t = 0; t < m + n; ++t) {
            if (img[t] == 0) {
                continue;
            }
            bool same_block = (t < m) == (k < m);
            if (found != 0 || !same_block || (img[t] != 1 && img[t] != -1)) {
                throw DomainError("reflection along " + to_string(alpha) + " is not a signed permutation");
            }
            int idx = static_cast<int>(t < m ? t : t - m) + 1;
            found = img[t] > 0 ? idx : -idx;
        }
        if (found == 0) {
            throw DomainError("reflection along " + to_string(alpha) + " is singular");
        }
        (k < m ? e[k] : d[k - m]) = found;
    }
    return SignedPermutation(std::move(e), std::move(d), tag);
}

/// A finite group given by generators. `order` is the product formula of the realized group;
/// `reflection_roots` are the positive roots whose reflections the group contains.
struct GroupDescriptor {
    std::size_t m = 0, n = 0;
    GroupTag tag = GroupTag::full_W;
    std::vector<SignedPermutation> generators;
    std::size_t order = 1;
    std::vector<Weight> reflection_roots;
};

inline constexpr std::size_t default_group_cap = 1000000;

/// Breadth-first closure; yields every element exactly once, identity first.
inline std::vector<SignedPermutation> enumerate(const GroupDescriptor &g, std::size_t cap = default_group_cap)
{
    if (g.order > cap) {
        throw ResourceError("group order " + std::to_string(g.order) + " exceeds cap " + std::to_string(cap));
    }
    std::vector<SignedPermutation> out;
    std::set<std::vector<int>> seen;
    auto id = SignedPermutation::identity(g.m, g.n, g.tag);
    std::deque<SignedPermutation> queue{id};
    seen.insert(id.key());
    while (!queue.empty()) {
        SignedPermutation w = std::move(queue.front());
        queue.pop_front();
        for (const auto &s : g.generators) {
            SignedPermutation ws = (s * w).with_tag(g.tag);
            if (seen.insert(ws.key()).second) {
                if (seen.size() > cap) {
                    throw ResourceError("group closure exceeds cap " + std::to_string(cap));
                }
                queue.push_back(ws);
            }
        }
        out.push_back(std::move(w));
    }
    return out;
}

namespace detail
{

inline std::size_t factorial(std::size_t k)
{
    std::size_t f = 1;
    for (std::size_t i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

inline std::size_t factor_order(FactorKind kind, std::size_t k)
{
    switch (kind) {
    case FactorKind::A: return factorial(k);
    case FactorKind::BC: return (std::size_t{1} << k) * factorial(k);
    case FactorKind::D: return k == 0 ? 1 : (std::size_t{1} << (k - 1)) * factorial(k);
    case FactorKind::none: return 1;
    }
    return 1;
}

inline std::vector<SignedPermutation> closure_of(const std::vector<SignedPermutation> &gens, std::size_t m,
                                                 std::size_t n)
{
    GroupDescriptor g{m, n, GroupTag::full_W, gens, 0, {}};
    g.order = 0;
    return enumerate(g);
}

} // namespace detail

/// Weyl groups attached to a root system: W = W^# × W_2 plus maps outside W that preserve Δ.
struct WeylGroups {
    GroupDescriptor full;
    GroupDescriptor sharp;
    GroupDescriptor second;
    /// s_{δ_i} for D(n,m) (ε block of type C): preserves Δ without lying in W_2.
    std::vector<SignedPermutation> external;
};

inline WeylGroups weyl_groups(const RootSystem &rs)
{
    const std::size_t M = rs.eps_count(), N = rs.delta_count();
    WeylGroups out;
    auto simple_of = [&](const std::vector<Weight> &pos) {
        std::set<Weight> s(pos.begin(), pos.end());
        std::vector<Weight> simple;
        for (const auto &a : pos) {
            bool dec = false;
            for (const auto &b : pos) {
                if (s.count(a - b)) {
                    dec = true;
                    break;
                }
            }
            if (!dec) {
                simple.push_back(a);
            }
        }
        return simple;
    };
    auto make = [&](GroupTag tag, const std::vector<Weight> &pos, std::size_t order) {
        GroupDescriptor g;
        g.m = M;
        g.n = N;
        g.tag = tag;
        for (const auto &a : simple_of(pos)) {
            g.generators.push_back(reflection(a, tag));
        }
        g.order = order;
        g.reflection_roots = pos;
        return g;
    };
    std::size_t o1 = detail::factor_order(rs.eps_kind(), M);
    std::size_t o2 = detail::factor_order(rs.delta_kind(), N);
    out.sharp = make(GroupTag::W_sharp, rs.positive_sharp(), o1);
    out.second = make(GroupTag::W_2, rs.positive_second(), o2);
    out.full = make(GroupTag::full_W, rs.positive_even(), o1 * o2);
    if (rs.shape() == Shape::D_sp) {
        for (std::size_t j = 0; j < N; ++j) {
            out.external.push_back(reflection(rs.delta(j), GroupTag::external));
        }
    }
    return out;
}

/// Subgroup fixing λ, with a greedily chosen generating set.
inline GroupDescriptor stabilizer(const Weight &lambda, const GroupDescriptor &g, std::size_t cap = default_group_cap)
{
    std::vector<SignedPermutation> fixing;
    for (const auto &w : enumerate(g, cap)) {
        if (w.act(lambda) == lambda) {
            fixing.push_back(w);
        }
    }
    GroupDescriptor st;
    st.m = g.m;
    st.n = g.n;
    st.tag = g.tag;
    st.order = fixing.size();
    for (const auto &a : g.reflection_roots) {
        if (bilinear_form(a, lambda) == 0) {
            st.reflection_roots.push_back(a);
        }
    }
    std::set<std::vector<int>> generated{SignedPermutation::identity(g.m, g.n).key()};
    for (const auto &w : fixing) {
        if (generated.count(w.key())) {
            continue;
        }
        st.generators.push_back(w);
        generated.clear();
        for (const auto &x : detail::closure_of(st.generators, g.m, g.n)) {
            generated.insert(x.key());
        }
    }
    return st;
}

/// Stab_g(λ) is trivial or contains a reflection s_α with α among g's roots.
inline bool check_stabilizer_dichotomy(const Weight &lambda, const GroupDescriptor &g,
                                       std::size_t cap = default_group_cap)
{
    std::set<std::vector<int>> reflections;
    for (const auto &a : g.reflection_roots) {
        reflections.insert(reflection(a).key());
    }
    bool trivial = true;
    for (const auto &w : enumerate(g, cap)) {
        if (w.is_identity() || w.act(lambda) != lambda) {
            continue;
        }
        trivial = false;
        if (reflections.count(w.key())) {
            return true;
        }
    }
    return trivial;
}

/// The reductive even part g_0: its simple roots Π_0, ρ_0 and Weyl group W.
struct EvenPart {
    std::vector<Weight> simple_roots;
    Weight rho0;
    GroupDescriptor weyl;
    SpanBasis basis;

    explicit EvenPart(const RootSystem &rs)
        : simple_roots(rs.even_simple_roots()), rho0(rs.rho0()), weyl(weyl_groups(rs).full),
          basis(rs.even_simple_roots())
    {
    }

    Rational coroot_pairing(const Weight &lambda, const Weight &alpha) const
    {
        return Rational(2) * bilinear_form(lambda, alpha) / bilinear_form(alpha, alpha);
    }

    /// λ ∈ P: λ lies in ℚΠ_0 and ⟨λ,α^∨⟩ ∈ ℤ for α ∈ Π_0.
    bool in_weight_lattice(const Weight &lambda) const
    {
        if (!basis.coords(lambda)) {
            return false;
        }
        return std::all_of(simple_roots.begin(), simple_roots.end(),
                           [&](const Weight &a) { return is_integer(coroot_pairing(lambda, a)); });
    }

    bool is_dominant(const Weight &mu) const
    {
        return std::all_of(simple_roots.begin(), simple_roots.end(),
                           [&](const Weight &a) { return coroot_pairing(mu, a) >= 0; });
    }

    std::vector<Weight> orbit(const Weight &lambda, std::size_t cap = default_group_cap) const
    {
        std::set<Weight> pts;
        for (const auto &w : enumerate(weyl, cap)) {
            pts.insert(w.act(lambda));
        }
        return {pts.begin(), pts.end()};
    }

    Weight dominant_representative(const Weight &lambda, std::size_t cap = default_group_cap) const
    {
        for (const auto &mu : orbit(lambda, cap)) {
            if (is_dominant(mu)) {
                return mu;
            }
        }
        throw StructuralError("orbit without a dominant point");
    }
};

/// Some orbit point μ of λ ∈ P satisfies μ − ρ_0 ∈ ℚ_{≥0}Π_0.
inline bool orbit_intersects_shifted_cone(const Weight &lambda, const EvenPart &g0,
                                          std::size_t cap = default_group_cap)
{
    if (!g0.in_weight_lattice(lambda)) {
        throw DomainError("weight " + to_string(lambda) + " is not in the weight lattice of g_0");
    }
    for (const auto &mu : g0.orbit(lambda, cap)) {
        if (in_positive_cone(mu - g0.rho0, g0.basis, ConeRing::rational)) {
            return true;
        }
    }
    return false;
}

} // namespace superdenom
