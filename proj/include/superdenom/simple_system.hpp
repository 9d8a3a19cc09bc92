// Simple systems, odd reflections, admissible pairs and the functional f_Π.
#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "root_system.hpp"

namespace superdenom
{

/// A base Π of Δ together with Δ_+(Π) and the Weyl vectors.
struct SimpleSystem {
    std::vector<Weight> simple_roots;
    std::vector<Weight> positive_even;
    std::vector<Weight> positive_odd;
    Weight rho0, rho1, rho;
    SpanBasis basis;

    bool is_positive(const Weight &a) const
    {
        return std::binary_search(positive_even.begin(), positive_even.end(), a) ||
               std::binary_search(positive_odd.begin(), positive_odd.end(), a);
    }
    bool contains(const Weight &a) const
    {
        return std::find(simple_roots.begin(), simple_roots.end(), a) != simple_roots.end();
    }
    std::optional<std::size_t> index_of(const Weight &a) const
    {
        auto it = std::find(simple_roots.begin(), simple_roots.end(), a);
        if (it == simple_roots.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - simple_roots.begin());
    }
    /// Union of positive even and odd roots, sorted and without repeats.
    std::vector<Weight> positive_roots() const
    {
        std::set<Weight> s(positive_even.begin(), positive_even.end());
        s.insert(positive_odd.begin(), positive_odd.end());
        return {s.begin(), s.end()};
    }
    /// Key independent of the listing order of Π.
    std::vector<Weight> sorted_key() const
    {
        auto k = simple_roots;
        std::sort(k.begin(), k.end());
        return k;
    }
};

/// Builds Δ_+(Π) = Δ ∩ ℤ_{≥0}Π and checks that Δ = Δ_+ ⊔ −Δ_+.
inline SimpleSystem derive(const std::vector<Weight> &pi, const RootSystem &rs)
{
    if (pi.empty() && rs.dim() > 0 && !(rs.even().empty() && rs.odd().empty())) {
        throw ValidationError("empty simple system for a nonempty root system");
    }
    std::set<Weight> seen;
    for (const auto &a : pi) {
        if (!rs.is_root(a)) {
            throw ValidationError("simple root " + to_string(a) + " is not a root");
        }
        if (!seen.insert(a).second) {
            throw ValidationError("simple root " + to_string(a) + " is repeated");
        }
    }
    SimpleSystem sys;
    sys.simple_roots = pi;
    sys.basis = SpanBasis(pi);
    auto classify = [&](const std::vector<Weight> &roots, std::vector<Weight> &out) {
        for (const auto &a : roots) {
            bool pos = in_positive_cone(a, sys.basis, ConeRing::integer).has_value();
            bool neg = in_positive_cone(-a, sys.basis, ConeRing::integer).has_value();
            if (pos == neg) {
                throw ValidationError("not a simple system: root " + to_string(a) +
                                      (pos ? " is both positive and negative" : " lies in neither cone"));
            }
            if (pos) {
                out.push_back(a);
            }
        }
        std::sort(out.begin(), out.end());
    };
    classify(rs.even(), sys.positive_even);
    classify(rs.odd(), sys.positive_odd);
    sys.rho0 = rs.zero();
    for (const auto &a : sys.positive_even) {
        sys.rho0 += a;
    }
    sys.rho0 *= Rational(1, 2);
    sys.rho1 = rs.zero();
    for (const auto &a : sys.positive_odd) {
        sys.rho1 += a;
    }
    sys.rho1 *= Rational(1, 2);
    sys.rho = sys.rho0 - sys.rho1;
    return sys;
}

/// s_β(Π): β ↦ −β, α ↦ α+β when (α,β) ≠ 0, other simple roots fixed.
inline SimpleSystem odd_reflection(const SimpleSystem &sys, const Weight &beta, const RootSystem &rs)
{
    auto idx = sys.index_of(beta);
    if (!idx) {
        throw DomainError("odd reflection: " + to_string(beta) + " is not a simple root");
    }
    if (!is_isotropic(beta)) {
        throw DomainError("odd reflection: " + to_string(beta) + " is not isotropic");
    }
    std::vector<Weight> pi;
    pi.reserve(sys.simple_roots.size());
    for (const auto &a : sys.simple_roots) {
        if (a == beta) {
            pi.push_back(-beta);
        } else if (bilinear_form(a, beta) != 0) {
            pi.push_back(a + beta);
        } else {
            pi.push_back(a);
        }
    }
    SimpleSystem out = derive(pi, rs);
    // Positive systems must differ exactly by β ↔ −β.
    auto expect = sys.positive_odd;
    expect.erase(std::find(expect.begin(), expect.end(), beta));
    expect.push_back(-beta);
    std::sort(expect.begin(), expect.end());
    if (out.positive_even != sys.positive_even || out.positive_odd != expect) {
        throw StructuralError("odd reflection at " + to_string(beta) + " changed more than ±β");
    }
    if (out.rho != sys.rho + beta) {
        throw StructuralError("odd reflection at " + to_string(beta) + " broke the rho shift");
    }
    return out;
}

/// (S, Π) with S ⊆ Π a maximal set of pairwise-orthogonal isotropic roots.
struct AdmissiblePair {
    std::vector<Weight> S;
    SimpleSystem pi;

    /// Positions of S inside Π.
    std::vector<std::size_t> s_indices() const
    {
        std::vector<std::size_t> out;
        for (const auto &b : S) {
            auto i = pi.index_of(b);
            out.push_back(i ? *i : pi.simple_roots.size());
        }
        return out;
    }
    std::vector<Weight> sorted_s() const
    {
        auto k = S;
        std::sort(k.begin(), k.end());
        return k;
    }
};

struct AdmissibilityResult {
    bool ok = true;
    std::string failed_clause;
    std::string detail;
    explicit operator bool() const { return ok; }
};

inline AdmissibilityResult is_admissible(const std::vector<Weight> &S, const std::vector<Weight> &pi,
                                         const RootSystem &rs)
{
    auto fail = [](std::string clause, std::string detail) {
        return AdmissibilityResult{false, std::move(clause), std::move(detail)};
    };
    SimpleSystem sys;
    try {
        sys = derive(pi, rs);
    } catch (const Error &e) {
        return fail("simple_system", e.what());
    }
    for (const auto &b : S) {
        if (!sys.contains(b)) {
            return fail("subset", to_string(b) + " is not in Pi");
        }
    }
    for (const auto &b : S) {
        if (!is_isotropic(b)) {
            return fail("isotropic", to_string(b) + " is not isotropic");
        }
    }
    for (std::size_t i = 0; i < S.size(); ++i) {
        for (std::size_t j = i + 1; j < S.size(); ++j) {
            if (S[i] == S[j] || bilinear_form(S[i], S[j]) != 0) {
                return fail("orthogonal", to_string(S[i]) + " and " + to_string(S[j]) + " are not orthogonal");
            }
        }
    }
    if (S.size() != rs.defect()) {
        return fail("cardinality",
                    "|S| = " + std::to_string(S.size()) + " but defect is " + std::to_string(rs.defect()));
    }
    auto expected = rs.positive_even();
    std::sort(expected.begin(), expected.end());
    if (sys.positive_even != expected) {
        return fail("even_positive", "Delta_+(Pi) does not restrict to the fixed Delta_{+,0}");
    }
    return {};
}

inline AdmissiblePair make_pair(std::vector<Weight> S, const std::vector<Weight> &pi, const RootSystem &rs)
{
    auto res = is_admissible(S, pi, rs);
    if (!res) {
        throw ValidationError("pair is not admissible (" + res.failed_clause + "): " + res.detail);
    }
    return AdmissiblePair{std::move(S), derive(pi, rs)};
}

enum class PairVariant { step2, step2_prime, step3, step3_prime };

inline std::string to_string(PairVariant v)
{
    switch (v) {
    case PairVariant::step2: return "step2_pair";
    case PairVariant::step2_prime: return "step2_prime_pair";
    case PairVariant::step3: return "step3_pair";
    case PairVariant::step3_prime: return "step3_prime_pair";
    }
    return "?";
}

inline PairVariant parse_variant(const std::string &s)
{
    for (auto v : {PairVariant::step2, PairVariant::step2_prime, PairVariant::step3, PairVariant::step3_prime}) {
        if (s == to_string(v) || s + "_pair" == to_string(v)) {
            return v;
        }
    }
    throw ValidationError("unknown pair variant '" + s + "'");
}

/// Variants meaningful for rs; the prime variants exist only for D(m,n), m > n.
inline std::vector<PairVariant> applicable_variants(const RootSystem &rs)
{
    switch (rs.shape()) {
    case Shape::Q: return {};
    case Shape::D_so:
        return {PairVariant::step2, PairVariant::step2_prime, PairVariant::step3, PairVariant::step3_prime};
    default: return {PairVariant::step2, PairVariant::step3};
    }
}

/// The tabulated admissible pairs, in the normalized M ≥ N embedding.
inline AdmissiblePair standard_pair(const RootSystem &rs, PairVariant variant)
{
    const std::size_t M = rs.eps_count(), N = rs.delta_count();
    const Shape sh = rs.shape();
    auto e = [&](std::size_t i) { return rs.eps(i); };
    auto d = [&](std::size_t j) { return rs.delta(j); };
    const Rational two = 2;
    if (sh == Shape::Q) {
        throw DomainError("Q(n) has no admissible pairs");
    }
    if ((variant == PairVariant::step2_prime || variant == PairVariant::step3_prime) && sh != Shape::D_so) {
        throw DomainError(to_string(variant) + " applies only to D(m,n) with m > n");
    }
    std::vector<Weight> pi, S;
    if (sh == Shape::C) {
        for (std::size_t i = 0; i + 1 < M; ++i) {
            pi.push_back(e(i) - e(i + 1));
        }
        pi.push_back(e(M - 1) - d(0));
        pi.push_back(e(M - 1) + d(0));
        S = {e(M - 1) - d(0)};
        return make_pair(S, pi, rs);
    }
    // ε_1−δ_1, δ_1−ε_2, …, then the remaining ε-chain.
    auto chain_p = [&] {
        std::vector<Weight> p;
        for (std::size_t i = 0; i < N; ++i) {
            p.push_back(e(i) - d(i));
            if (i + 1 < M) {
                p.push_back(d(i) - e(i + 1));
            }
        }
        for (std::size_t j = N; j + 1 < M; ++j) {
            p.push_back(e(j) - e(j + 1));
        }
        return p;
    };
    // ε-chain first, then alternating ε_{M−N+j−1}−δ_j, δ_j−ε_{M−N+j}.
    auto chain_p7 = [&] {
        std::vector<Weight> p;
        const std::size_t r = M - N;
        if (r == 0) {
            for (std::size_t j = 0; j < N; ++j) {
                p.push_back(d(j) - e(j));
                if (j + 1 < N) {
                    p.push_back(e(j) - d(j + 1));
                }
            }
            return p;
        }
        for (std::size_t i = 0; i + 1 < r; ++i) {
            p.push_back(e(i) - e(i + 1));
        }
        for (std::size_t j = 0; j < N; ++j) {
            p.push_back(e(r + j - 1) - d(j));
            p.push_back(d(j) - e(r + j));
        }
        return p;
    };
    auto s_forward = [&] {
        std::vector<Weight> s;
        for (std::size_t i = 0; i < N; ++i) {
            s.push_back(e(i) - d(i));
        }
        return s;
    };
    // δ_{N−i} − ε_{M−i}, i = 0..N−1, listed by increasing δ index.
    auto s_backward = [&] {
        std::vector<Weight> s;
        for (std::size_t j = 0; j < N; ++j) {
            s.push_back(d(j) - e(M - N + j));
        }
        return s;
    };

    if (sh == Shape::GL) {
        return make_pair(s_forward(), chain_p(), rs);
    }
    const bool is_b = sh == Shape::B_so || sh == Shape::B_sp;
    Weight tail_b = e(M - 1);
    Weight tail_dsp = two * e(M - 1);

    switch (variant) {
    case PairVariant::step2:
        if (is_b) {
            if (M == N) {
                for (std::size_t i = 0; i < N; ++i) {
                    pi.push_back(d(i) - e(i));
                    pi.push_back(i + 1 < N ? e(i) - d(i + 1) : e(i));
                    S.push_back(d(i) - e(i));
                }
                return make_pair(S, pi, rs);
            }
            pi = chain_p();
            pi.push_back(tail_b);
            return make_pair(s_forward(), pi, rs);
        }
        if (sh == Shape::D_sp) {
            pi = chain_p();
            if (M == N) {
                pi.push_back(e(M - 1) + d(N - 1));
            } else {
                pi.push_back(tail_dsp);
            }
            return make_pair(s_forward(), pi, rs);
        }
        // D_so, M > N.
        pi = chain_p();
        if (M >= N + 2) {
            pi.push_back(e(M - 2) + e(M - 1));
        } else {
            pi.push_back(d(N - 1) + e(M - 1));
        }
        return make_pair(s_forward(), pi, rs);
    case PairVariant::step2_prime: {
        for (std::size_t i = 0; i + 1 < N; ++i) {
            pi.push_back(e(i) - d(i));
            pi.push_back(d(i) - e(i + 1));
            S.push_back(e(i) - d(i));
        }
        for (std::size_t i = N - 1; i + 2 < M; ++i) {
            pi.push_back(e(i) - e(i + 1));
        }
        pi.push_back(e(M - 2) - d(N - 1));
        pi.push_back(d(N - 1) - e(M - 1));
        pi.push_back(d(N - 1) + e(M - 1));
        S.push_back(e(M - 1) + d(N - 1));
        return make_pair(S, pi, rs);
    }
    case PairVariant::step3:
    case PairVariant::step3_prime: {
        pi = chain_p7();
        if (is_b) {
            pi.push_back(tail_b);
        } else if (sh == Shape::D_so) {
            pi.push_back(e(M - 1) + d(N - 1));
        } else {
            pi.push_back(tail_dsp);
        }
        S = s_backward();
        if (variant == PairVariant::step3_prime) {
            S.back() = d(N - 1) + e(M - 1);
        }
        return make_pair(S, pi, rs);
    }
    }
    throw DomainError("unreachable pair variant");
}

/// A linear functional on V stored by ε/δ coordinate and by merged ξ index.
struct Functional {
    std::vector<Rational> coords; // value on each ε/δ basis vector
    std::vector<Rational> xi;     // value on ξ_1..ξ_{m+n}

    Rational operator()(const Weight &a) const
    {
        Rational s = 0;
        for (std::size_t k = 0; k < coords.size(); ++k) {
            s += coords[k] * a[k];
        }
        return s;
    }
};

/// f_Π with ⟨f,α⟩ = 1 on Π; for GL the free shift is fixed by min_i ⟨f,ξ_i⟩ = 1.
/// Verifies: integer nonzero on Δ, ≥ 1 on Δ_+, and α simple iff ⟨f,α⟩ = 1.
inline Functional functional_for(const SimpleSystem &sys, const RootSystem &rs)
{
    if (rs.shape() == Shape::C || rs.shape() == Shape::Q) {
        throw DomainError("f_Pi is defined here for GL, B and D only");
    }
    const std::size_t dim = rs.dim();
    const auto &pi = sys.simple_roots;
    // Solve pi · x = 1 by Gaussian elimination; the GL kernel is spanned by (1,…,1).
    std::vector<std::vector<Rational>> a(pi.size(), std::vector<Rational>(dim + 1));
    for (std::size_t r = 0; r < pi.size(); ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            a[r][c] = pi[r][c];
        }
        a[r][dim] = 1;
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < dim && row < a.size(); ++c) {
        std::size_t p = row;
        while (p < a.size() && a[p][c] == 0) {
            ++p;
        }
        if (p == a.size()) {
            continue;
        }
        std::swap(a[p], a[row]);
        Rational inv = 1 / a[row][c];
        for (auto &v : a[row]) {
            v *= inv;
        }
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r != row && a[r][c] != 0) {
                Rational f = a[r][c];
                for (std::size_t cc = 0; cc <= dim; ++cc) {
                    a[r][cc] -= f * a[row][cc];
                }
            }
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (std::size_t r = row; r < a.size(); ++r) {
        if (a[r][dim] != 0) {
            throw ValidationError("f_Pi: inconsistent system, Pi is not a valid simple system");
        }
    }
    Functional f;
    f.coords.assign(dim, 0);
    for (std::size_t r = 0; r < row; ++r) {
        f.coords[pivot_col[r]] = a[r][dim];
    }
    if (row < dim) {
        if (rs.shape() != Shape::GL || dim - row != 1) {
            throw ValidationError("f_Pi: underdetermined outside GL");
        }
        // The free column was set to 0; the kernel is (1,…,1), so shift to min = 1.
        Rational mn = 0;
        bool first = true;
        for (std::size_t k = 0; k < dim; ++k) {
            if (first || f.coords[k] < mn) {
                mn = f.coords[k];
                first = false;
            }
        }
        for (auto &v : f.coords) {
            v += 1 - mn;
        }
    }
    f.xi.resize(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const auto &xm = rs.xi_map()[x];
        f.xi[x] = f.coords[xm.eps ? xm.idx : rs.eps_count() + xm.idx];
    }
    for (const auto &alpha : pi) {
        if (f(alpha) != 1) {
            throw StructuralError("f_Pi is not 1 on simple root " + to_string(alpha));
        }
    }
    auto check = [&](const Weight &alpha, bool positive) {
        Rational v = f(alpha);
        if (!is_integer(v) || v == 0) {
            throw StructuralError("f_Pi takes value " + to_string(v) + " on root " + to_string(alpha));
        }
        if (positive && v < 1) {
            throw StructuralError("f_Pi is below 1 on positive root " + to_string(alpha));
        }
        if ((v == 1) != sys.contains(alpha)) {
            throw StructuralError("f_Pi(" + to_string(alpha) + ") = 1 does not match simplicity");
        }
    };
    for (const auto &alpha : sys.positive_even) {
        check(alpha, true);
    }
    for (const auto &alpha : sys.positive_odd) {
        check(alpha, true);
    }
    for (const auto &alpha : rs.even()) {
        if (!sys.is_positive(alpha)) {
            check(alpha, false);
        }
    }
    for (const auto &alpha : rs.odd()) {
        if (!sys.is_positive(alpha)) {
            check(alpha, false);
        }
    }
    return f;
}

/// (S∖{γ} ∪ {γ′}, Π) under the exchange hypotheses; γ′ takes γ's slot in S.
inline AdmissiblePair second_type_move(const AdmissiblePair &pair, const Weight &gamma, const Weight &gamma_p,
                                       const RootSystem &rs)
{
    auto it = std::find(pair.S.begin(), pair.S.end(), gamma);
    if (it == pair.S.end()) {
        throw DomainError("second-type move: gamma " + to_string(gamma) + " is not in S");
    }
    if (!pair.pi.contains(gamma_p)) {
        throw DomainError("second-type move: gamma' " + to_string(gamma_p) + " is not in Pi");
    }
    if (std::find(pair.S.begin(), pair.S.end(), gamma_p) != pair.S.end()) {
        throw DomainError("second-type move: gamma' " + to_string(gamma_p) + " already lies in S");
    }
    if (!is_isotropic(gamma) || !is_isotropic(gamma_p)) {
        throw DomainError("second-type move: gamma and gamma' must be isotropic");
    }
    Weight sum = gamma + gamma_p;
    if (!rs.is_sharp_root(sum)) {
        throw DomainError("second-type move: gamma + gamma' = " + to_string(sum) + " is not in Delta^#");
    }
    for (const auto &b : pair.S) {
        if (b != gamma && bilinear_form(gamma_p, b) != 0) {
            throw DomainError("second-type move: gamma' is not orthogonal to " + to_string(b));
        }
    }
    AdmissiblePair out = pair;
    out.S[static_cast<std::size_t>(it - pair.S.begin())] = gamma_p;
    return out;
}

/// All admissible second-type moves (γ, γ′) available at a pair.
inline std::vector<std::pair<Weight, Weight>> second_type_moves(const AdmissiblePair &pair, const RootSystem &rs)
{
    std::vector<std::pair<Weight, Weight>> out;
    for (const auto &g : pair.S) {
        for (const auto &gp : pair.pi.simple_roots) {
            try {
                second_type_move(pair, g, gp, rs);
                out.emplace_back(g, gp);
            } catch (const DomainError &) {
            }
        }
    }
    return out;
}

/// Reflect a pair at β ∈ S: s_β(S) replaces β by −β, the rest of S is orthogonal to β.
inline AdmissiblePair odd_reflection(const AdmissiblePair &pair, const Weight &beta, const RootSystem &rs)
{
    if (std::find(pair.S.begin(), pair.S.end(), beta) == pair.S.end()) {
        throw DomainError("pair reflection: " + to_string(beta) + " is not in S");
    }
    AdmissiblePair out{pair.S, odd_reflection(pair.pi, beta, rs)};
    for (auto &b : out.S) {
        if (b == beta) {
            b = -b;
        }
    }
    return out;
}

/// Every simple system with Δ_+ ∩ Δ_0 = Δ_{+,0}, reached by odd reflections from the step-(ii) base.
inline std::vector<SimpleSystem> enumerate_simple_systems(const RootSystem &rs, std::size_t cap = 100000)
{
    SimpleSystem seed = standard_pair(rs, PairVariant::step2).pi;
    std::vector<SimpleSystem> out;
    std::set<std::vector<Weight>> seen{seed.sorted_key()};
    std::deque<SimpleSystem> queue{seed};
    while (!queue.empty()) {
        SimpleSystem cur = std::move(queue.front());
        queue.pop_front();
        for (const auto &b : cur.simple_roots) {
            if (!is_isotropic(b)) {
                continue;
            }
            SimpleSystem nxt = odd_reflection(cur, b, rs);
            if (seen.insert(nxt.sorted_key()).second) {
                if (seen.size() > cap) {
                    throw ResourceError("simple-system enumeration exceeds cap " + std::to_string(cap));
                }
                queue.push_back(std::move(nxt));
            }
        }
        out.push_back(std::move(cur));
    }
    return out;
}

/// Admissible pairs (S, Π) over every enumerated Π; S is listed in Π order.
inline std::vector<AdmissiblePair> enumerate_admissible_pairs(const RootSystem &rs, std::size_t cap = 100000)
{
    std::vector<AdmissiblePair> out;
    const std::size_t k = rs.defect();
    for (const auto &sys : enumerate_simple_systems(rs, cap)) {
        std::vector<Weight> iso;
        for (const auto &b : sys.simple_roots) {
            if (is_isotropic(b)) {
                iso.push_back(b);
            }
        }
        std::vector<Weight> cur;
        auto rec = [&](auto &&self, std::size_t start) -> void {
            if (cur.size() == k) {
                out.push_back(AdmissiblePair{cur, sys});
                if (out.size() > cap) {
                    throw ResourceError("admissible-pair enumeration exceeds cap " + std::to_string(cap));
                }
                return;
            }
            for (std::size_t i = start; i < iso.size(); ++i) {
                bool orth = std::all_of(cur.begin(), cur.end(),
                                        [&](const Weight &b) { return bilinear_form(b, iso[i]) == 0; });
                if (orth) {
                    cur.push_back(iso[i]);
                    self(self, i + 1);
                    cur.pop_back();
                }
            }
        };
        rec(rec, 0);
    }
    return out;
}

/// Key identifying a pair independently of listing order.
inline std::pair<std::vector<Weight>, std::vector<Weight>> pair_key(const AdmissiblePair &p)
{
    return {p.sorted_s(), p.pi.sorted_key()};
}

} // namespace superdenom
