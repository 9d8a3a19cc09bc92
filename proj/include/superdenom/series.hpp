// Closed-form terms of the ring of rational functions in e^λ, and their truncated expansions.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "simple_system.hpp"
#include "weyl_group.hpp"

namespace superdenom
{

/// coeff · e^{numerator} / Π_{γ ∈ denom} (1 + e^{−γ}).
struct GeometricTerm {
    Rational coeff = 1;
    Weight numerator;
    std::vector<Weight> denom;

    friend bool operator==(const GeometricTerm &a, const GeometricTerm &b)
    {
        auto da = a.denom, db = b.denom;
        std::sort(da.begin(), da.end());
        std::sort(db.begin(), db.end());
        return a.coeff == b.coeff && a.numerator == b.numerator && da == db;
    }
};

inline std::string to_string(const GeometricTerm &t)
{
    std::string s = to_string(t.coeff) + "*e^(" + to_string(t.numerator) + ")";
    if (!t.denom.empty()) {
        s += "/";
        for (const auto &g : t.denom) {
            s += "(1+e^-(" + to_string(g) + "))";
        }
    }
    return s;
}

/// Rewrites every denominator root into Δ_+: 1/(1+e^{−γ}) = e^{γ}/(1+e^{γ}) for γ ∈ −Δ_+.
inline GeometricTerm normalize(GeometricTerm t, const SimpleSystem &sys)
{
    for (auto &g : t.denom) {
        if (sys.is_positive(g)) {
            continue;
        }
        if (!sys.is_positive(-g)) {
            throw DomainError("normalize: denominator root " + to_string(g) + " is not in ±Delta_+");
        }
        t.numerator += g;
        g = -g;
    }
    std::sort(t.denom.begin(), t.denom.end());
    return t;
}

inline GeometricTerm w_act(const SignedPermutation &w, const GeometricTerm &t, const SimpleSystem &sys)
{
    GeometricTerm out{t.coeff, w.act(t.numerator), {}};
    out.denom.reserve(t.denom.size());
    for (const auto &g : t.denom) {
        out.denom.push_back(w.act(g));
    }
    return normalize(std::move(out), sys);
}

inline std::vector<GeometricTerm> w_act(const SignedPermutation &w, const std::vector<GeometricTerm> &terms,
                                        const SimpleSystem &sys)
{
    std::vector<GeometricTerm> out;
    out.reserve(terms.size());
    for (const auto &t : terms) {
        out.push_back(w_act(w, t, sys));
    }
    return out;
}

/// Reference data shared by comparable series: the basis Π defining Q^+, the anchor λ and the height bound.
struct SeriesFrame {
    SpanBasis basis;
    Weight anchor;
    int height = 8;

    std::vector<int> key_of(const Weight &exponent) const
    {
        auto c = basis.int_coords(anchor - exponent);
        if (!c) {
            throw StructuralError("exponent " + to_string(exponent) + " is not in anchor - Z Pi");
        }
        return *c;
    }
    Weight exponent_of(const std::vector<int> &key) const
    {
        std::vector<Rational> c(key.begin(), key.end());
        return anchor - basis.reconstruct(c);
    }
};

inline int key_height(const std::vector<int> &k)
{
    int h = 0;
    for (int x : k) {
        h += x;
    }
    return h;
}

/// Orders keys by height, then lexicographically.
struct KeyOrder {
    bool operator()(const std::vector<int> &a, const std::vector<int> &b) const
    {
        int ha = key_height(a), hb = key_height(b);
        if (ha != hb) {
            return ha < hb;
        }
        return a < b;
    }
};

/// Truncated expansion Σ c_μ e^{λ−μ} with integer Π-coordinates μ of height ≤ H.
/// Keys may have negative entries when a single term reaches above the anchor.
class FormalSeries
{
public:
    using Map = std::map<std::vector<int>, Rational, KeyOrder>;

    FormalSeries() = default;
    explicit FormalSeries(std::shared_ptr<const SeriesFrame> frame) : frame_(std::move(frame)) {}

    const SeriesFrame &frame() const { return *frame_; }
    std::shared_ptr<const SeriesFrame> frame_ptr() const { return frame_; }
    const Map &coeffs() const noexcept { return coeffs_; }
    int height() const { return frame_->height; }

    Rational coeff(const std::vector<int> &key) const
    {
        auto it = coeffs_.find(key);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }
    Rational coeff_at(const Weight &exponent) const
    {
        auto c = frame_->basis.int_coords(frame_->anchor - exponent);
        return c ? coeff(*c) : Rational(0);
    }
    void add_to(const std::vector<int> &key, const Rational &c)
    {
        if (c == 0 || key_height(key) > frame_->height) {
            return;
        }
        auto [it, fresh] = coeffs_.try_emplace(key, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) {
                coeffs_.erase(it);
            }
        }
    }

    FormalSeries &operator+=(const FormalSeries &o)
    {
        check_compatible(o);
        for (const auto &[k, c] : o.coeffs_) {
            add_to(k, c);
        }
        return *this;
    }
    FormalSeries &operator-=(const FormalSeries &o)
    {
        check_compatible(o);
        for (const auto &[k, c] : o.coeffs_) {
            add_to(k, -c);
        }
        return *this;
    }
    FormalSeries &operator*=(const Rational &c)
    {
        if (c == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto &kv : coeffs_) {
            kv.second *= c;
        }
        return *this;
    }
    friend FormalSeries operator+(FormalSeries a, const FormalSeries &b) { return a += b; }
    friend FormalSeries operator-(FormalSeries a, const FormalSeries &b) { return a -= b; }
    friend FormalSeries operator-(FormalSeries a) { return a *= Rational(-1); }

    bool is_zero() const { return coeffs_.empty(); }
    std::size_t size() const { return coeffs_.size(); }

    /// Multiplies by Π (1 + sign·e^{−α}) and truncates.
    FormalSeries mul_poly(const std::vector<std::pair<int, Weight>> &factors) const
    {
        FormalSeries cur = *this;
        for (const auto &[sign, alpha] : factors) {
            auto c = frame_->basis.int_coords(alpha);
            if (!c) {
                throw StructuralError("factor root " + to_string(alpha) + " is not in Z Pi");
            }
            FormalSeries next(frame_);
            for (const auto &[k, v] : cur.coeffs_) {
                next.add_to(k, v);
                std::vector<int> shifted = k;
                for (std::size_t i = 0; i < shifted.size(); ++i) {
                    shifted[i] += (*c)[i];
                }
                next.add_to(shifted, sign > 0 ? v : Rational(-v));
            }
            cur = std::move(next);
        }
        return cur;
    }

    void check_compatible(const FormalSeries &o) const
    {
        if (frame_ == o.frame_) {
            return;
        }
        if (!frame_ || !o.frame_ || frame_->height != o.frame_->height || !(frame_->anchor == o.frame_->anchor) ||
            frame_->basis.vectors() != o.frame_->basis.vectors()) {
            throw StructuralError("series over different frames");
        }
    }

private:
    std::shared_ptr<const SeriesFrame> frame_;
    Map coeffs_;
};

inline std::shared_ptr<const SeriesFrame> make_frame(const SimpleSystem &sys, const Weight &anchor, int height)
{
    return std::make_shared<const SeriesFrame>(SeriesFrame{sys.basis, anchor, height});
}

/// Expands one normalized term into the frame, exactly up to the frame's height.
inline void expand_into(FormalSeries &out, const GeometricTerm &t)
{
    const SeriesFrame &fr = out.frame();
    std::vector<int> start = fr.key_of(t.numerator);
    std::vector<std::vector<int>> steps;
    for (const auto &g : t.denom) {
        auto c = fr.basis.int_coords(g);
        if (!c || key_height(*c) <= 0 ||
            std::any_of(c->begin(), c->end(), [](int x) { return x < 0; })) {
            throw StructuralError("denominator root " + to_string(g) + " is not in Q^+ of the frame");
        }
        steps.push_back(*c);
    }
    // Π_γ Σ_k (−1)^k e^{−kγ}: one geometric convolution per denominator root.
    std::map<std::vector<int>, Rational> cur{{start, t.coeff}};
    if (key_height(start) > fr.height) {
        return;
    }
    for (const auto &step : steps) {
        const int hs = key_height(step);
        std::map<std::vector<int>, Rational> next;
        for (const auto &[k, v] : cur) {
            std::vector<int> p = k;
            Rational c = v;
            for (int h = key_height(k); h <= fr.height; h += hs) {
                next[p] += c;
                c = -c;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    p[i] += step[i];
                }
            }
        }
        cur = std::move(next);
    }
    for (const auto &[k, v] : cur) {
        out.add_to(k, v);
    }
}

inline FormalSeries expand(const GeometricTerm &t, std::shared_ptr<const SeriesFrame> frame)
{
    FormalSeries out(std::move(frame));
    expand_into(out, t);
    return out;
}

inline FormalSeries expand(const std::vector<GeometricTerm> &terms, std::shared_ptr<const SeriesFrame> frame)
{
    FormalSeries out(std::move(frame));
    for (const auto &t : terms) {
        expand_into(out, t);
    }
    return out;
}

/// First key (in height-lex order) where two series differ.
struct Discrepancy {
    std::vector<int> key;
    Weight exponent;
    Rational lhs, rhs;
};

inline std::optional<Discrepancy> first_difference(const FormalSeries &a, const FormalSeries &b)
{
    a.check_compatible(b);
    FormalSeries d = a - b;
    if (d.is_zero()) {
        return std::nullopt;
    }
    const auto &k = d.coeffs().begin()->first;
    return Discrepancy{k, a.frame().exponent_of(k), a.coeff(k), b.coeff(k)};
}

inline bool operator==(const FormalSeries &a, const FormalSeries &b) { return !first_difference(a, b); }

/// One line per nonzero coefficient: "coeff  Π-coords  ε/δ-coords", height then lexicographic order.
inline std::string dump(const FormalSeries &s)
{
    std::ostringstream os;
    for (const auto &[k, c] : s.coeffs()) {
        os << to_string(c) << "  [";
        for (std::size_t i = 0; i < k.size(); ++i) {
            os << (i ? "," : "") << -k[i];
        }
        os << "]  [";
        Weight e = s.frame().exponent_of(k);
        for (std::size_t i = 0; i < e.dim(); ++i) {
            os << (i ? "," : "") << to_string(e[i]);
        }
        os << "]\n";
    }
    return os.str();
}

struct SkewCheck {
    bool ok = true;
    std::optional<SignedPermutation> generator;
    std::optional<Discrepancy> witness;
};

/// w·P = sgn(w)·P to height H for every generator w, with P = Σ terms.
inline SkewCheck skew_invariance_check(const std::vector<GeometricTerm> &terms, const GroupDescriptor &g,
                                       const SimpleSystem &sys, const Weight &anchor, int height)
{
    auto frame = make_frame(sys, anchor, height);
    FormalSeries base = expand(terms, frame);
    for (const auto &w : g.generators) {
        FormalSeries moved = expand(w_act(w, terms, sys), frame);
        FormalSeries target = base;
        target *= Rational(w.sgn());
        if (auto d = first_difference(moved, target)) {
            return SkewCheck{false, w, d};
        }
    }
    return {};
}

/// Exact Laurent polynomial Σ c_λ e^λ.
using LaurentPoly = std::map<Weight, Rational>;

inline void add_monomial(LaurentPoly &p, const Weight &e, const Rational &c)
{
    if (c == 0) {
        return;
    }
    auto [it, fresh] = p.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) {
            p.erase(it);
        }
    }
}

/// Multiplies p by (1 + sign·e^{−α}).
inline LaurentPoly mul_binomial(const LaurentPoly &p, int sign, const Weight &alpha)
{
    LaurentPoly out;
    for (const auto &[e, c] : p) {
        add_monomial(out, e, c);
        add_monomial(out, e - alpha, sign > 0 ? c : Rational(-c));
    }
    return out;
}

/// (Σ terms)·Π_{γ∈D}(1+e^{−γ}) as an exact Laurent polynomial; every term's denominator must divide D.
inline LaurentPoly cross_multiply(const std::vector<GeometricTerm> &terms, const std::vector<Weight> &common)
{
    LaurentPoly out;
    for (const auto &t : terms) {
        std::multiset<Weight> rest(common.begin(), common.end());
        for (const auto &g : t.denom) {
            auto it = rest.find(g);
            if (it == rest.end()) {
                throw StructuralError("denominator root " + to_string(g) + " does not divide the common denominator");
            }
            rest.erase(it);
        }
        LaurentPoly p{{t.numerator, t.coeff}};
        for (const auto &g : rest) {
            p = mul_binomial(p, 1, g);
        }
        for (const auto &[e, c] : p) {
            add_monomial(out, e, c);
        }
    }
    return out;
}

inline std::string to_string(const LaurentPoly &p)
{
    if (p.empty()) {
        return "0";
    }
    std::string s;
    for (const auto &[e, c] : p) {
        if (!s.empty()) {
            s += " + ";
        }
        s += to_string(c) + "*e^(" + to_string(e) + ")";
    }
    return s;
}

} // namespace superdenom
