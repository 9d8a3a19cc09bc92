// Both sides of the Weyl denominator identity, the expansion cross-check, and the finite
// checks behind each step of the proof.
#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "series.hpp"

namespace superdenom
{

/// Worker count from SUPERDENOM_WORKERS, else the hardware concurrency.
inline std::size_t worker_count()
{
    if (const char *env = std::getenv("SUPERDENOM_WORKERS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) {
            throw ValidationError("SUPERDENOM_WORKERS must be a positive integer, got '" + std::string(env) + "'");
        }
        return static_cast<std::size_t>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

namespace detail
{

/// Runs fn(acc, i) for i in [0, count), one accumulator per contiguous block, summed in block order.
inline FormalSeries parallel_sum(std::size_t count, const std::shared_ptr<const SeriesFrame> &frame,
                                 const std::function<void(FormalSeries &, std::size_t)> &fn)
{
    std::size_t k = std::max<std::size_t>(1, std::min(worker_count(), count));
    std::vector<FormalSeries> parts(k, FormalSeries(frame));
    std::vector<std::exception_ptr> errors(k);
    auto body = [&](std::size_t t) {
        try {
            for (std::size_t i = t * count / k; i < (t + 1) * count / k; ++i) {
                fn(parts[t], i);
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (k == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < k; ++t) {
            pool.emplace_back(body, t);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    FormalSeries out(frame);
    for (const auto &p : parts) {
        out += p;
    }
    return out;
}

inline std::int64_t micros_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
}

inline std::vector<std::pair<int, Weight>> even_factors(const SimpleSystem &sys)
{
    std::vector<std::pair<int, Weight>> out;
    for (const auto &a : sys.positive_even) {
        out.push_back({-1, a});
    }
    return out;
}

} // namespace detail

/// φ(w) = Σ_{β∈S, wβ<0} wβ and |w|β = ±wβ ∈ Δ_+.
struct PhiData {
    SignedPermutation w;
    Weight phi;
    std::vector<Weight> abs_w;
};

inline PhiData phi_data(const SignedPermutation &w, const AdmissiblePair &pair)
{
    const Weight &rho = pair.pi.rho;
    PhiData d{w, Weight(rho.m(), rho.n()), {}};
    for (const auto &b : pair.S) {
        Weight wb = w.act(b);
        if (pair.pi.is_positive(wb)) {
            d.abs_w.push_back(wb);
        } else if (pair.pi.is_positive(-wb)) {
            d.phi += wb;
            d.abs_w.push_back(-wb);
        } else {
            throw StructuralError("w maps " + to_string(b) + " outside the roots");
        }
    }
    return d;
}

/// Y = e^ρ / Π_{β∈S}(1+e^{−β}).
inline GeometricTerm y_term(const AdmissiblePair &pair) { return {1, pair.pi.rho, pair.S}; }

/// F(B) = Σ_{w∈W^#} sgn(w)·wB, one normalized term per group element.
inline std::vector<GeometricTerm> apply_f(const std::vector<GeometricTerm> &terms,
                                          const std::vector<SignedPermutation> &group, const SimpleSystem &sys)
{
    std::vector<GeometricTerm> out;
    out.reserve(terms.size() * group.size());
    for (const auto &w : group) {
        for (const auto &t : terms) {
            auto u = w_act(w, t, sys);
            u.coeff *= w.sgn();
            out.push_back(std::move(u));
        }
    }
    return out;
}

/// X = F(Y) in closed form.
inline std::vector<GeometricTerm> x_terms(const AdmissiblePair &pair, const RootSystem &rs,
                                          std::size_t cap = default_group_cap)
{
    return apply_f({y_term(pair)}, enumerate(weyl_groups(rs).sharp, cap), pair.pi);
}

/// Frame anchored at ρ with Q^+ taken from Π.
inline std::shared_ptr<const SeriesFrame> identity_frame(const AdmissiblePair &pair, int height)
{
    return make_frame(pair.pi, pair.pi.rho, height);
}

/// R·e^ρ = e^ρ Π_{Δ_{+,0}}(1−e^{−α}) / Π_{Δ_{+,1}}(1+e^{−α}) in the given frame.
inline FormalSeries lhs(const SimpleSystem &sys, const std::shared_ptr<const SeriesFrame> &frame)
{
    return expand(GeometricTerm{1, sys.rho, sys.positive_odd}, frame).mul_poly(detail::even_factors(sys));
}

inline FormalSeries lhs(const AdmissiblePair &pair, int height) { return lhs(pair.pi, identity_frame(pair, height)); }

/// Σ_{w∈W^#} sgn(w) expand(normalize(wY)).
inline FormalSeries rhs_closed(const AdmissiblePair &pair, const std::vector<SignedPermutation> &group,
                               const std::shared_ptr<const SeriesFrame> &frame)
{
    const GeometricTerm y = y_term(pair);
    return detail::parallel_sum(group.size(), frame, [&](FormalSeries &acc, std::size_t i) {
        auto t = w_act(group[i], y, pair.pi);
        t.coeff *= group[i].sgn();
        expand_into(acc, t);
    });
}

inline FormalSeries rhs_closed(const AdmissiblePair &pair, const RootSystem &rs, int height,
                               std::size_t cap = default_group_cap)
{
    return rhs_closed(pair, enumerate(weyl_groups(rs).sharp, cap), identity_frame(pair, height));
}

/// Σ_w Σ_{μ∈ℤ_{≥0}^S} sgn(w)(−1)^{Σμ} e^{φ(w) − |w|μ + wρ}, each exponent located in the frame directly.
inline FormalSeries rhs_expanded(const AdmissiblePair &pair, const std::vector<SignedPermutation> &group,
                                 const std::shared_ptr<const SeriesFrame> &frame)
{
    const SeriesFrame &fr = *frame;
    return detail::parallel_sum(group.size(), frame, [&](FormalSeries &acc, std::size_t idx) {
        const auto &w = group[idx];
        PhiData d = phi_data(w, pair);
        std::vector<int> step_height;
        for (const auto &a : d.abs_w) {
            auto c = fr.basis.int_coords(a);
            if (!c || key_height(*c) <= 0) {
                throw StructuralError("|w|beta = " + to_string(a) + " is not in Q^+");
            }
            step_height.push_back(key_height(*c));
        }
        const Rational sign = w.sgn();
        std::function<void(std::size_t, const Weight &, int, bool)> rec = [&](std::size_t i, const Weight &expo,
                                                                             int h, bool odd) {
            if (i == d.abs_w.size()) {
                auto key = fr.key_of(expo);
                if (key_height(key) != h) {
                    throw StructuralError("height bookkeeping mismatch at " + to_string(expo));
                }
                acc.add_to(key, odd ? Rational(-sign) : sign);
                return;
            }
            Weight e = expo;
            for (int k = 0; h + k * step_height[i] <= fr.height; ++k) {
                rec(i + 1, e, h + k * step_height[i], odd != (k % 2 == 1));
                e -= d.abs_w[i];
            }
        };
        Weight base = d.phi + w.act(pair.pi.rho);
        int h0 = key_height(fr.key_of(base));
        if (h0 <= fr.height) {
            rec(0, base, h0, false);
        }
    });
}

inline FormalSeries rhs_expanded(const AdmissiblePair &pair, const RootSystem &rs, int height,
                                 std::size_t cap = default_group_cap)
{
    return rhs_expanded(pair, enumerate(weyl_groups(rs).sharp, cap), identity_frame(pair, height));
}

/// {w ∈ W^# : wρ = ρ, wS ⊂ Δ_+}; Σ sgn over it is the coefficient of e^ρ in X.
inline std::vector<SignedPermutation> e_rho_coefficient_set(const AdmissiblePair &pair, const RootSystem &rs,
                                                            std::size_t cap = default_group_cap)
{
    std::vector<SignedPermutation> out;
    for (const auto &w : enumerate(weyl_groups(rs).sharp, cap)) {
        if (w.act(pair.pi.rho) != pair.pi.rho) {
            continue;
        }
        if (std::all_of(pair.S.begin(), pair.S.end(), [&](const Weight &b) { return pair.pi.is_positive(w.act(b)); })) {
            out.push_back(w);
        }
    }
    return out;
}

/// Exact check X·Π_{Δ_{+,1}}(1+e^{−α}) = e^ρ Π_{Δ_{+,0}}(1−e^{−α}) as Laurent polynomials.
inline bool symbolic_identity(const std::vector<GeometricTerm> &x, const SimpleSystem &sys, const Rational &scale = 1)
{
    LaurentPoly want{{sys.rho, scale}};
    if (scale == 0) {
        want.clear();
    }
    for (const auto &a : sys.positive_even) {
        want = mul_binomial(want, -1, a);
    }
    return cross_multiply(x, sys.positive_odd) == want;
}

/// Number of monomials cross_multiply would touch; used to skip oversized symbolic checks.
inline std::size_t symbolic_cost(const std::vector<GeometricTerm> &x, const SimpleSystem &sys)
{
    std::size_t cost = 0;
    for (const auto &t : x) {
        std::size_t free = sys.positive_odd.size() - std::min(sys.positive_odd.size(), t.denom.size());
        if (free >= 40) {
            return SIZE_MAX;
        }
        cost += std::size_t{1} << free;
    }
    return cost;
}

struct VerifyOptions {
    int height = 8;
    std::size_t group_cap = default_group_cap;
    bool skew = true;
    bool symbolic = true;
    std::size_t symbolic_limit = std::size_t{1} << 20;
};

struct VerificationReport {
    SuperType system;
    std::string variant;
    AdmissiblePair pair;
    int height = 0;
    std::size_t group_order = 0;
    std::size_t lhs_terms = 0;
    std::size_t rhs_terms = 0;
    bool equal = false;
    std::optional<Discrepancy> first_discrepancy;
    bool expanded_equal = false;
    std::optional<Discrepancy> expanded_discrepancy;
    bool skew_checked = false;
    bool skew_ok = true;
    std::optional<SignedPermutation> skew_generator;
    std::optional<Discrepancy> skew_witness;
    Rational e_rho_coefficient = 0;
    std::optional<bool> symbolic;
    std::vector<std::pair<std::string, std::int64_t>> timings_us;

    bool ok() const { return equal && expanded_equal && skew_ok && symbolic.value_or(true); }
};

inline VerificationReport verify(const AdmissiblePair &pair, const RootSystem &rs, const VerifyOptions &opt = {},
                                 std::string variant = "")
{
    using clock = std::chrono::steady_clock;
    VerificationReport r;
    r.system = rs.type();
    r.variant = std::move(variant);
    r.pair = pair;
    r.height = opt.height;
    auto groups = weyl_groups(rs);

    auto t0 = clock::now();
    auto group = enumerate(groups.sharp, opt.group_cap);
    r.group_order = group.size();
    auto frame = identity_frame(pair, opt.height);
    r.timings_us.push_back({"enumerate", detail::micros_since(t0)});

    t0 = clock::now();
    FormalSeries left = lhs(pair.pi, frame);
    r.lhs_terms = left.size();
    r.timings_us.push_back({"lhs", detail::micros_since(t0)});

    t0 = clock::now();
    FormalSeries closed = rhs_closed(pair, group, frame);
    r.rhs_terms = closed.size();
    r.e_rho_coefficient = closed.coeff_at(pair.pi.rho);
    r.timings_us.push_back({"rhs_closed", detail::micros_since(t0)});

    t0 = clock::now();
    FormalSeries expanded = rhs_expanded(pair, group, frame);
    r.timings_us.push_back({"rhs_expanded", detail::micros_since(t0)});

    r.first_discrepancy = first_difference(left, closed);
    r.equal = !r.first_discrepancy;
    r.expanded_discrepancy = first_difference(closed, expanded);
    r.expanded_equal = !r.expanded_discrepancy;

    std::vector<GeometricTerm> x = apply_f({y_term(pair)}, group, pair.pi);
    if (opt.skew) {
        t0 = clock::now();
        auto sk = skew_invariance_check(x, groups.full, pair.pi, pair.pi.rho, opt.height);
        r.skew_checked = true;
        r.skew_ok = sk.ok;
        r.skew_generator = sk.generator;
        r.skew_witness = sk.witness;
        r.timings_us.push_back({"skew", detail::micros_since(t0)});
    }
    if (opt.symbolic && symbolic_cost(x, pair.pi) <= opt.symbolic_limit) {
        t0 = clock::now();
        r.symbolic = symbolic_identity(x, pair.pi);
        r.timings_us.push_back({"symbolic", detail::micros_since(t0)});
    }
    return r;
}

inline VerificationReport verify(const RootSystem &rs, PairVariant v, const VerifyOptions &opt = {})
{
    return verify(standard_pair(rs, v), rs, opt, to_string(v));
}

// ---------------------------------------------------------------------------------------------
// Q(n)

/// {ε_i − ε_{n+1−i}}_{i ≤ [n/2]}.
inline std::vector<Weight> qn_standard_s(const RootSystem &rs)
{
    std::vector<Weight> S;
    const std::size_t n = rs.eps_count();
    for (std::size_t i = 0; i < n / 2; ++i) {
        S.push_back(rs.eps(i) - rs.eps(n - 1 - i));
    }
    return S;
}

struct QnReport {
    int n = 0;
    std::vector<Weight> S;
    int height = 0;
    std::string convention = "w(e_i) = e_{w(i)}";
    Rational a_S = 0;
    /// Σ sgn over {σ : σ(i) > σ(n+1−i), i ≤ n/2} as literally written in the combinatorial lemma.
    Rational lemma_literal_sum = 0;
    /// The same sum with σ(i) < σ(n+1−i), the set the lemma's proof actually counts.
    Rational lemma_reversed_sum = 0;
    std::optional<std::size_t> expected_abs;
    bool equal = false;
    std::optional<Discrepancy> first_discrepancy;
    bool rhs_zero_case = false;
    std::optional<bool> symbolic;

    bool ok() const
    {
        bool abs_ok = !expected_abs || abs(a_S) == Rational(static_cast<long long>(*expected_abs));
        return equal && symbolic.value_or(true) && abs_ok;
    }
};

inline SimpleSystem qn_system(const RootSystem &rs)
{
    std::vector<Weight> pi;
    for (std::size_t i = 0; i + 1 < rs.eps_count(); ++i) {
        pi.push_back(rs.eps(i) - rs.eps(i + 1));
    }
    return derive(pi, rs);
}

/// a(S)·R = Σ_{w∈S_n} sgn(w)/Π_{β∈S}(1+e^{−wβ}) to height H.
inline QnReport qn_identity(int n, std::vector<Weight> S, int height, const VerifyOptions &opt = {})
{
    auto rs = RootSystem::build({Family::Q, n, n, {}});
    auto sys = qn_system(rs);
    QnReport r;
    r.n = n;
    r.S = std::move(S);
    r.height = height;
    for (const auto &b : r.S) {
        if (!std::binary_search(sys.positive_odd.begin(), sys.positive_odd.end(), b)) {
            throw ValidationError("Q(n): " + to_string(b) + " is not a positive odd root");
        }
    }
    auto group = enumerate(weyl_groups(rs).full, opt.group_cap);
    const std::size_t half = static_cast<std::size_t>(n) / 2;
    for (const auto &w : group) {
        if (std::all_of(r.S.begin(), r.S.end(), [&](const Weight &b) { return sys.is_positive(w.act(b)); })) {
            r.a_S += w.sgn();
        }
        const auto &img = w.eps_images();
        bool gt = true, lt = true;
        for (std::size_t i = 0; i < half; ++i) {
            gt = gt && img[i] > img[n - 1 - i];
            lt = lt && img[i] < img[n - 1 - i];
        }
        r.lemma_literal_sum += gt ? w.sgn() : 0;
        r.lemma_reversed_sum += lt ? w.sgn() : 0;
    }
    if (r.S == qn_standard_s(rs)) {
        r.expected_abs = detail::factorial(half);
    }
    r.rhs_zero_case = r.a_S == 0;

    auto frame = make_frame(sys, rs.zero(), height);
    FormalSeries left = lhs(sys, frame);
    left *= r.a_S;
    auto terms = apply_f({GeometricTerm{1, rs.zero(), r.S}}, group, sys);
    FormalSeries right = expand(terms, frame);
    r.first_discrepancy = first_difference(left, right);
    r.equal = !r.first_discrepancy;
    if (opt.symbolic && symbolic_cost(terms, sys) <= opt.symbolic_limit) {
        r.symbolic = symbolic_identity(terms, sys, r.a_S);
    }
    return r;
}

// ---------------------------------------------------------------------------------------------
// Finite checks of the lemmas used in the proof.

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

namespace detail
{

inline std::set<std::vector<int>> keys_of(const std::vector<SignedPermutation> &ws)
{
    std::set<std::vector<int>> out;
    for (const auto &w : ws) {
        out.insert(w.key());
    }
    return out;
}

inline Check fail(Check c, std::string why)
{
    c.ok = false;
    c.detail = std::move(why);
    return c;
}

} // namespace detail

/// (i) ρ − wρ ∈ ℚ_{≥0}Δ_+ for all w ∈ W^#; (ii) Stab_{W^#}ρ = ⟨s_α : (α,α) > 0, (α,ρ) = 0⟩.
inline Check rho_cone_check(const AdmissiblePair &pair, const RootSystem &rs, std::size_t cap = default_group_cap)
{
    Check c{"rho_cone", true, ""};
    const Weight &rho = pair.pi.rho;
    for (const auto &a : pair.pi.simple_roots) {
        if (bilinear_form(a, a) < 0) {
            return detail::fail(c, "hypothesis fails: simple root " + to_string(a) + " has negative length");
        }
    }
    std::vector<SignedPermutation> stab;
    auto group = enumerate(weyl_groups(rs).sharp, cap);
    for (const auto &w : group) {
        Weight wr = w.act(rho);
        if (!in_positive_cone(rho - wr, pair.pi.basis, ConeRing::rational)) {
            return detail::fail(c, "(i) fails for w = " + to_string(w));
        }
        if (wr == rho) {
            stab.push_back(w);
        }
    }
    std::vector<SignedPermutation> gens;
    for (const auto &a : rs.positive_sharp()) {
        if (bilinear_form(a, a) > 0 && bilinear_form(a, rho) == 0) {
            gens.push_back(reflection(a));
        }
    }
    auto generated = gens.empty() ? std::vector<SignedPermutation>{SignedPermutation::identity(rs.eps_count(),
                                                                                             rs.delta_count())}
                                  : detail::closure_of(gens, rs.eps_count(), rs.delta_count());
    if (detail::keys_of(generated) != detail::keys_of(stab)) {
        return detail::fail(c, "(ii) fails: |Stab| = " + std::to_string(stab.size()) +
                                   ", reflections generate " + std::to_string(generated.size()));
    }
    c.detail = "|W#| = " + std::to_string(group.size()) + ", |Stab rho| = " + std::to_string(stab.size());
    return c;
}

/// Stab_{W^#}ρ is the symmetric group on ε_1..ε_k, k = n for m = n and n+1 for m > n.
inline Check rho_stabilizer_check(const AdmissiblePair &pair, const RootSystem &rs, std::size_t cap = default_group_cap)
{
    Check c{"rho_stabilizer", true, ""};
    const std::size_t M = rs.eps_count(), N = rs.delta_count();
    const std::size_t k = M == N ? N : N + 1;
    std::vector<SignedPermutation> stab;
    for (const auto &w : enumerate(weyl_groups(rs).sharp, cap)) {
        if (w.act(pair.pi.rho) == pair.pi.rho) {
            stab.push_back(w);
        }
    }
    std::vector<SignedPermutation> gens;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        gens.push_back(reflection(rs.eps(i) - rs.eps(i + 1)));
    }
    auto expect = gens.empty() ? std::vector<SignedPermutation>{SignedPermutation::identity(M, N)}
                               : detail::closure_of(gens, M, N);
    if (detail::keys_of(expect) != detail::keys_of(stab)) {
        return detail::fail(c, "|Stab rho| = " + std::to_string(stab.size()) + ", expected S_" + std::to_string(k));
    }
    c.detail = "Stab rho = S_" + std::to_string(k);
    return c;
}

/// Orbit facts on a grid of weights with coordinates in {0, ±1/2, ±1, ±3/2} (rank ≤ 5) or {0, ±1/2, ±1}:
/// (i) every orbit in P has a dominant point, (ii) stabilizers are trivial or contain a reflection,
/// (iii) regular orbits in P meet ρ_0 + ℚ_{≥0}Π_0.
inline Check orbit_dichotomy_check(const RootSystem &rs, std::size_t cap = default_group_cap)
{
    Check c{"orbit_dichotomy", true, ""};
    EvenPart g0(rs);
    auto group = enumerate(g0.weyl, cap);
    std::set<std::vector<int>> reflections;
    for (const auto &a : g0.weyl.reflection_roots) {
        reflections.insert(reflection(a).key());
    }
    const std::size_t d = rs.dim();
    std::vector<Rational> values{Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
    if (d <= 5) {
        values.insert(values.begin(), Rational(-3, 2));
        values.push_back(Rational(3, 2));
    }
    std::vector<std::size_t> idx(d, 0);
    std::size_t in_p = 0, regular = 0, total = 0;
    while (true) {
        Weight lambda = rs.zero();
        for (std::size_t i = 0; i < d; ++i) {
            lambda[i] = values[idx[i]];
        }
        ++total;
        bool trivial = true, has_reflection = false;
        std::set<Weight> orbit;
        for (const auto &w : group) {
            Weight mu = w.act(lambda);
            orbit.insert(mu);
            if (!w.is_identity() && mu == lambda) {
                trivial = false;
                has_reflection = has_reflection || reflections.count(w.key()) > 0;
            }
        }
        if (!trivial && !has_reflection) {
            return detail::fail(c, "(ii) fails at " + to_string(lambda));
        }
        if (g0.in_weight_lattice(lambda)) {
            ++in_p;
            if (std::none_of(orbit.begin(), orbit.end(), [&](const Weight &mu) { return g0.is_dominant(mu); })) {
                return detail::fail(c, "(i) fails at " + to_string(lambda));
            }
            if (orbit.size() == group.size()) {
                ++regular;
                bool meets = std::any_of(orbit.begin(), orbit.end(), [&](const Weight &mu) {
                    return in_positive_cone(mu - g0.rho0, g0.basis, ConeRing::rational).has_value();
                });
                if (!meets) {
                    return detail::fail(c, "(iii) fails at " + to_string(lambda));
                }
            }
        }
        std::size_t i = 0;
        while (i < d && ++idx[i] == values.size()) {
            idx[i++] = 0;
        }
        if (i == d) {
            break;
        }
    }
    c.detail = std::to_string(total) + " weights, " + std::to_string(in_p) + " in P, " + std::to_string(regular) +
               " regular";
    return c;
}

/// ρ(s_βΠ) = ρ(Π) + β for every isotropic simple root of every simple system.
inline Check rho_shift_check(const RootSystem &rs, std::size_t cap = 100000)
{
    Check c{"rho_shift", true, ""};
    std::size_t count = 0;
    for (const auto &sys : enumerate_simple_systems(rs, cap)) {
        for (const auto &b : sys.simple_roots) {
            if (!is_isotropic(b)) {
                continue;
            }
            ++count;
            if (odd_reflection(sys, b, rs).rho != sys.rho + b) {
                return detail::fail(c, "shift fails at " + to_string(b));
            }
        }
    }
    c.detail = std::to_string(count) + " odd reflections";
    return c;
}

/// X is unchanged by odd reflections and by second-type exchanges of S, to height H,
/// over every admissible pair.
inline Check pair_equivalence_check(const RootSystem &rs, int height, std::size_t cap = default_group_cap)
{
    Check c{"pair_exchange", true, ""};
    auto group = enumerate(weyl_groups(rs).sharp, cap);
    std::size_t exchanges = 0, reflections = 0;
    for (const auto &p : enumerate_admissible_pairs(rs)) {
        auto frame = identity_frame(p, height);
        FormalSeries base = rhs_closed(p, group, frame);
        for (const auto &[g, gp] : second_type_moves(p, rs)) {
            auto q = second_type_move(p, g, gp, rs);
            ++exchanges;
            if (auto diff = first_difference(base, rhs_closed(q, group, frame))) {
                return detail::fail(c, "exchange " + to_string(g) + " -> " + to_string(gp) + " differs at " +
                                           to_string(diff->exponent));
            }
        }
        for (const auto &b : p.S) {
            auto q = odd_reflection(p, b, rs);
            ++reflections;
            std::vector<GeometricTerm> moved;
            for (const auto &t : apply_f({y_term(q)}, group, q.pi)) {
                moved.push_back(normalize(t, p.pi));
            }
            if (auto diff = first_difference(base, expand(moved, frame))) {
                return detail::fail(c, "odd reflection at " + to_string(b) + " differs at " +
                                           to_string(diff->exponent));
            }
        }
    }
    c.detail = std::to_string(exchanges) + " exchanges, " + std::to_string(reflections) + " odd reflections";
    return c;
}

/// Whether the stabilizer description is claimed for the step-2 pair of this system (ρ ≠ 0 and the family is A, B or D).
inline bool rho_stabilizer_applies(const RootSystem &rs)
{
    switch (rs.shape()) {
    case Shape::GL:
    case Shape::B_so:
    case Shape::B_sp: return true;
    case Shape::D_sp: return rs.eps_count() != rs.delta_count();
    case Shape::D_so: return rs.eps_count() != rs.delta_count() + 1;
    default: return false;
    }
}

// ---------------------------------------------------------------------------------------------
// Generator identities behind the W-skew-invariance of X.

namespace detail
{

inline Check term_fixed(std::string name, const SignedPermutation &w, const AdmissiblePair &p, int height)
{
    Check c{std::move(name), true, ""};
    GeometricTerm y = normalize(y_term(p), p.pi);
    GeometricTerm wy = w_act(w, y, p.pi);
    if (!(wy == y)) {
        return fail(c, "closed form differs: " + to_string(wy));
    }
    auto frame = identity_frame(p, height);
    if (auto diff = first_difference(expand(wy, frame), expand(y, frame))) {
        return fail(c, "expansion differs at " + to_string(diff->exponent));
    }
    c.detail = to_string(w);
    return c;
}

} // namespace detail

/// The pair on which the W-invariance argument runs: step2 for gl, step3 (and step3_prime for D(m,n), m>n) otherwise.
inline std::vector<PairVariant> invariance_variants(const RootSystem &rs)
{
    switch (rs.shape()) {
    case Shape::GL: return {PairVariant::step2};
    case Shape::D_so: return {PairVariant::step3, PairVariant::step3_prime};
    case Shape::B_so:
    case Shape::B_sp:
    case Shape::D_sp: return {PairVariant::step3};
    default: return {};
    }
}

inline std::vector<Check> generator_identities(const RootSystem &rs, int height, std::size_t cap = default_group_cap)
{
    std::vector<Check> out;
    const std::size_t M = rs.eps_count(), N = rs.delta_count();
    const Shape sh = rs.shape();
    auto group = enumerate(weyl_groups(rs).sharp, cap);
    for (auto v : invariance_variants(rs)) {
        auto p = standard_pair(rs, v);
        const std::string tag = to_string(v);
        const std::size_t r = sh == Shape::GL ? 0 : M - N;
        for (std::size_t i = 0; i + 1 < N; ++i) {
            SignedPermutation w = reflection(rs.eps(r + i) - rs.eps(r + i + 1)) *
                                  reflection(rs.delta(i) - rs.delta(i + 1));
            if (v == PairVariant::step3_prime && i + 2 == N) {
                w = reflection(rs.eps(M - 2) + rs.eps(M - 1)) * reflection(rs.delta(i) - rs.delta(i + 1));
            }
            out.push_back(detail::term_fixed("Sn pair " + std::to_string(i + 1) + " " + tag, w, p, height));
        }
        if (sh == Shape::B_so || sh == Shape::B_sp) {
            auto w = reflection(rs.delta(N - 1)) * reflection(rs.eps(M - 1));
            out.push_back(detail::term_fixed("s_dn s_em Y = Y " + tag, w, p, height));
        }
        if (sh == Shape::D_so || sh == Shape::D_sp) {
            auto frame = identity_frame(p, height);
            auto x = apply_f({y_term(p)}, group, p.pi);
            FormalSeries fx = expand(x, frame);
            if (sh == Shape::D_so) {
                Check c{"(1+s_dn)F(Y) = 0 " + tag, true, ""};
                FormalSeries sum = fx + expand(w_act(reflection(rs.delta(N - 1)), x, p.pi), frame);
                if (!sum.is_zero()) {
                    c = detail::fail(c, "nonzero at " + to_string(sum.frame().exponent_of(sum.coeffs().begin()->first)));
                }
                out.push_back(c);
            } else {
                for (const auto &s : weyl_groups(rs).external) {
                    Check c{"s_di F(Y) = F(Y) " + to_string(s) + " " + tag, true, ""};
                    if (auto diff = first_difference(expand(w_act(s, x, p.pi), frame), fx)) {
                        c = detail::fail(c, "differs at " + to_string(diff->exponent));
                    }
                    out.push_back(c);
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Regular orbits and the ξ line.

struct OrbitScan {
    SuperType system;
    int height = 0;
    std::size_t candidates = 0;
    std::vector<Weight> found;    // dominant representatives, sorted
    std::vector<Weight> expected; // likewise
    bool ok() const { return found == expected; }
};

/// ξ = Σ_{β∈S} β for the step-2 pair.
inline Weight xi_weight(const AdmissiblePair &pair)
{
    Weight x(pair.pi.rho.m(), pair.pi.rho.n());
    for (const auto &b : pair.S) {
        x += b;
    }
    return x;
}

/// Regular W-orbits lying entirely in ρ_0 − ℤ_{≥0}Π, searched over ρ_0 − μ with ht μ ≤ H.
inline OrbitScan regular_orbit_scan(const RootSystem &rs, int height, std::size_t cap = default_group_cap)
{
    if (rs.shape() != Shape::GL && rs.shape() != Shape::C) {
        throw DomainError("regular_orbit_scan applies to gl(m|n) and C(n)");
    }
    OrbitScan scan;
    scan.system = rs.type();
    scan.height = height;
    auto pair = standard_pair(rs, PairVariant::step2);
    EvenPart g0(rs);
    auto group = enumerate(g0.weyl, cap);
    const auto &pi = pair.pi.simple_roots;
    const Weight rho0 = g0.rho0;
    std::set<Weight> seen, found;
    std::vector<int> mu(pi.size(), 0);
    std::function<void(std::size_t, int, const Weight &)> rec = [&](std::size_t i, int left, const Weight &lambda) {
        if (i == pi.size()) {
            ++scan.candidates;
            std::set<Weight> orbit;
            for (const auto &w : group) {
                orbit.insert(w.act(lambda));
            }
            Weight top = *std::find_if(orbit.begin(), orbit.end(), [&](const Weight &x) { return g0.is_dominant(x); });
            if (!seen.insert(top).second || orbit.size() != group.size()) {
                return;
            }
            bool inside = std::all_of(orbit.begin(), orbit.end(), [&](const Weight &x) {
                auto k = pair.pi.basis.int_coords(rho0 - x);
                return k && std::all_of(k->begin(), k->end(), [](int v) { return v >= 0; });
            });
            if (inside) {
                found.insert(top);
            }
            return;
        }
        Weight l = lambda;
        for (int k = 0; k <= left; ++k) {
            rec(i + 1, left - k, l);
            l -= pi[i];
        }
    };
    rec(0, height, rho0);
    scan.found.assign(found.begin(), found.end());

    std::set<Weight> expect{g0.dominant_representative(rho0, cap)};
    if (rs.shape() == Shape::GL && rs.eps_count() == rs.delta_count()) {
        Weight xi = xi_weight(pair);
        for (int s = 1; s * static_cast<int>(pair.S.size()) <= height; ++s) {
            expect.insert(g0.dominant_representative(rho0 - Rational(s) * xi, cap));
        }
    }
    scan.expected.assign(expect.begin(), expect.end());
    return scan;
}

/// All m ∈ ℤ_{≥0}^{Δ_+} with Σ m_α α = target, up to `limit` solutions; keys are positive roots.
inline std::vector<std::map<Weight, int>> positive_decompositions(const AdmissiblePair &pair, const Weight &target,
                                                                   std::size_t limit = 16)
{
    auto roots = pair.pi.positive_roots();
    std::vector<std::vector<int>> coords;
    for (const auto &a : roots) {
        coords.push_back(*pair.pi.basis.int_coords(a));
    }
    auto goal = pair.pi.basis.int_coords(target);
    std::vector<std::map<Weight, int>> out;
    if (!goal || std::any_of(goal->begin(), goal->end(), [](int v) { return v < 0; })) {
        return out;
    }
    std::map<Weight, int> cur;
    std::function<void(std::size_t, std::vector<int> &)> rec = [&](std::size_t i, std::vector<int> &rem) {
        if (out.size() >= limit) {
            return;
        }
        if (std::all_of(rem.begin(), rem.end(), [](int v) { return v == 0; })) {
            out.push_back(cur);
            return;
        }
        if (i == roots.size()) {
            return;
        }
        rec(i + 1, rem);
        int k = 0;
        while (true) {
            bool fits = true;
            for (std::size_t j = 0; j < rem.size(); ++j) {
                fits = fits && rem[j] >= coords[i][j];
            }
            if (!fits) {
                break;
            }
            for (std::size_t j = 0; j < rem.size(); ++j) {
                rem[j] -= coords[i][j];
            }
            cur[roots[i]] = ++k;
            rec(i + 1, rem);
        }
        for (std::size_t j = 0; j < rem.size(); ++j) {
            rem[j] += k * coords[i][j];
        }
        cur.erase(roots[i]);
    };
    rec(0, *goal);
    return out;
}

struct XiReport {
    int n = 0;
    std::size_t solutions = 0;
    bool unique = false;          // exactly the decomposition Σ_{β∈S} β
    std::size_t perturbed_solutions = 0;
    bool perturbed_flagged = false; // ξ + α_0 is not uniquely the S-decomposition
    bool ok() const { return unique && perturbed_flagged; }
};

inline XiReport xi_uniqueness(int n)
{
    auto rs = RootSystem::build({Family::GL, n, n, {}});
    auto pair = standard_pair(rs, PairVariant::step2);
    Weight xi = xi_weight(pair);
    std::map<Weight, int> indicator;
    for (const auto &b : pair.S) {
        indicator[b] = 1;
    }
    XiReport r;
    r.n = n;
    auto sol = positive_decompositions(pair, xi);
    r.solutions = sol.size();
    r.unique = sol.size() == 1 && sol.front() == indicator;
    Weight alpha0 = pair.pi.simple_roots.size() > 1 ? pair.pi.simple_roots[1] : xi;
    auto bad = positive_decompositions(pair, xi + alpha0);
    r.perturbed_solutions = bad.size();
    r.perturbed_flagged = !(bad.size() == 1 && bad.front() == indicator);
    return r;
}

/// Coefficients of e^{−sξ} in R for gl(n|n), s = 0..s_max; ρ = 0 here so R = R·e^ρ.
inline std::vector<Rational> glnn_xi_coefficients(int n, int s_max)
{
    auto rs = RootSystem::build({Family::GL, n, n, {}});
    auto pair = standard_pair(rs, PairVariant::step2);
    auto left = lhs(pair, s_max * n);
    Weight xi = xi_weight(pair);
    std::vector<Rational> out;
    for (int s = 0; s <= s_max; ++s) {
        out.push_back(left.coeff_at(pair.pi.rho - Rational(s) * xi));
    }
    return out;
}

} // namespace superdenom
