// Root data for gl(m|n), B(m,n), D(m,n), C(n) and Q(n).
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace superdenom
{

enum class Family { GL, B, D, C, Q };
enum class SharpChoice { B_side, C_side };

inline std::string to_string(Family f)
{
    switch (f) {
    case Family::GL: return "GL";
    case Family::B: return "B";
    case Family::D: return "D";
    case Family::C: return "C";
    case Family::Q: return "Q";
    }
    return "?";
}

inline Family parse_family(const std::string &s)
{
    if (s == "GL" || s == "gl" || s == "A") {
        return Family::GL;
    }
    if (s == "B") {
        return Family::B;
    }
    if (s == "D") {
        return Family::D;
    }
    if (s == "C") {
        return Family::C;
    }
    if (s == "Q") {
        return Family::Q;
    }
    throw ValidationError("unknown family '" + s + "' (expected GL, B, D, C or Q)");
}

inline std::string to_string(SharpChoice s) { return s == SharpChoice::B_side ? "B_side" : "C_side"; }

inline SharpChoice parse_sharp(const std::string &s)
{
    if (s == "B_side" || s == "B") {
        return SharpChoice::B_side;
    }
    if (s == "C_side" || s == "C") {
        return SharpChoice::C_side;
    }
    throw ValidationError("unknown sharp choice '" + s + "' (expected B_side or C_side)");
}

/// User-facing label. For C and Q only n is meaningful (the rank).
struct SuperType {
    Family family = Family::GL;
    int m = 1;
    int n = 1;
    std::optional<SharpChoice> sharp;

    friend bool operator==(const SuperType &, const SuperType &) = default;
};

inline std::string to_string(const SuperType &t)
{
    switch (t.family) {
    case Family::GL: return "gl(" + std::to_string(t.m) + "|" + std::to_string(t.n) + ")";
    case Family::C: return "C(" + std::to_string(t.n) + ")";
    case Family::Q: return "Q(" + std::to_string(t.n) + ")";
    default: break;
    }
    std::string s = to_string(t.family) + "(" + std::to_string(t.m) + "," + std::to_string(t.n) + ")";
    if (t.sharp) {
        s += t.sharp == SharpChoice::B_side ? "[#=B]" : "[#=C]";
    }
    return s;
}

/// The m≥n-normalized embedding: which classical series lives on the ε block (the Δ^# side)
/// and which on the δ block.
enum class Shape { GL, B_so, B_sp, D_so, D_sp, C, Q };

/// Weyl-group type of one factor of the even part.
enum class FactorKind { A, BC, D, none };

class RootSystem
{
public:
    /// Which ε/δ coordinate a merged index ξ_k refers to.
    struct XiIndex {
        bool eps;
        std::size_t idx;
    };

    static RootSystem build(SuperType type)
    {
        RootSystem rs;
        rs.type_ = type;
        const int m = type.m;
        const int n = type.n;
        auto require = [](bool ok, const std::string &msg) {
            if (!ok) {
                throw ValidationError(msg);
            }
        };
        if (type.sharp) {
            require(type.family == Family::B && m == n,
                    "sharp choice is only meaningful for B(n,n)");
        }
        std::size_t M = 0, N = 0;
        bool first_is_eps = true;
        switch (type.family) {
        case Family::GL:
            require(m >= 1 && n >= 0, "GL requires m >= 1, n >= 0");
            rs.shape_ = Shape::GL;
            M = std::max(m, n);
            N = std::min(m, n);
            first_is_eps = m >= n;
            rs.eps_kind_ = FactorKind::A;
            rs.delta_kind_ = N > 0 ? FactorKind::A : FactorKind::none;
            break;
        case Family::B:
            require(m >= 1 && n >= 1, "B requires m, n >= 1");
            if (m == n) {
                if (!rs.type_.sharp) {
                    rs.type_.sharp = SharpChoice::C_side;
                }
                rs.shape_ = rs.type_.sharp == SharpChoice::B_side ? Shape::B_so : Shape::B_sp;
            } else {
                rs.shape_ = m > n ? Shape::B_so : Shape::B_sp;
            }
            M = std::max(m, n);
            N = std::min(m, n);
            first_is_eps = rs.shape_ == Shape::B_so;
            rs.eps_kind_ = FactorKind::BC;
            rs.delta_kind_ = FactorKind::BC;
            break;
        case Family::D:
            require(m >= 1 && n >= 1, "D requires m, n >= 1");
            rs.shape_ = m > n ? Shape::D_so : Shape::D_sp;
            M = std::max(m, n);
            N = std::min(m, n);
            first_is_eps = rs.shape_ == Shape::D_so;
            rs.eps_kind_ = m > n ? FactorKind::D : FactorKind::BC;
            rs.delta_kind_ = m > n ? FactorKind::BC : FactorKind::D;
            break;
        case Family::C:
            require(n >= 2, "C(n) requires n >= 2");
            rs.shape_ = Shape::C;
            M = static_cast<std::size_t>(n);
            N = 1;
            rs.eps_kind_ = FactorKind::BC;
            rs.delta_kind_ = FactorKind::none;
            break;
        case Family::Q:
            require(n >= 2, "Q(n) requires n >= 2");
            rs.shape_ = Shape::Q;
            M = static_cast<std::size_t>(n);
            N = 0;
            rs.eps_kind_ = FactorKind::A;
            rs.delta_kind_ = FactorKind::none;
            break;
        }
        require(M + N <= 12, "rank too large for desk-scale verification (m+n <= 12)");
        rs.M_ = M;
        rs.N_ = N;
        rs.fill_roots();
        rs.fill_xi_map(first_is_eps);
        return rs;
    }

    const SuperType &type() const noexcept { return type_; }
    Shape shape() const noexcept { return shape_; }
    std::size_t eps_count() const noexcept { return M_; }
    std::size_t delta_count() const noexcept { return N_; }
    std::size_t dim() const noexcept { return M_ + N_; }
    FactorKind eps_kind() const noexcept { return eps_kind_; }
    FactorKind delta_kind() const noexcept { return delta_kind_; }

    Weight zero() const { return Weight(M_, N_); }
    Weight eps(std::size_t i) const { return Weight::eps(M_, N_, i); }
    Weight delta(std::size_t j) const { return Weight::delta(M_, N_, j); }

    /// Δ_{+,0}.
    const std::vector<Weight> &positive_even() const noexcept { return pos_even_; }
    /// Δ_1, both signs.
    const std::vector<Weight> &odd() const noexcept { return odd_; }
    /// Δ_0, both signs.
    const std::vector<Weight> &even() const noexcept { return even_; }
    /// Δ^#, both signs.
    const std::vector<Weight> &sharp() const noexcept { return sharp_; }
    /// Δ^# ∩ Δ_{+,0}.
    const std::vector<Weight> &positive_sharp() const noexcept { return pos_sharp_; }
    /// Δ_{+,0} ∖ Δ^#, the roots of the complementary factor.
    const std::vector<Weight> &positive_second() const noexcept { return pos_second_; }
    /// Simple roots of Δ_{+,0}.
    const std::vector<Weight> &even_simple_roots() const noexcept { return even_simple_; }

    bool is_even_root(const Weight &a) const { return even_set_.count(a) > 0; }
    bool is_odd_root(const Weight &a) const { return odd_set_.count(a) > 0; }
    bool is_root(const Weight &a) const { return is_even_root(a) || is_odd_root(a); }
    bool is_sharp_root(const Weight &a) const { return sharp_set_.count(a) > 0; }
    bool is_positive_even(const Weight &a) const { return pos_even_set_.count(a) > 0; }

    /// min(m,n) for GL/B/D, 1 for C; Q has no isotropic roots of its own and reports 0.
    std::size_t defect() const noexcept
    {
        switch (shape_) {
        case Shape::C: return 1;
        case Shape::Q: return 0;
        default: return N_;
        }
    }

    /// Half-sum of Δ_{+,0}.
    Weight rho0() const
    {
        Weight r = zero();
        for (const auto &a : pos_even_) {
            r += a;
        }
        return Rational(1, 2) * r;
    }

    /// Merged labeling ξ_1..ξ_{m+n}: ξ_1..ξ_m is the first factor of the user's label
    /// (gl: the m side; B, D: the orthogonal side).
    const std::vector<XiIndex> &xi_map() const noexcept { return xi_map_; }
    std::size_t xi_of_coordinate(std::size_t k) const
    {
        for (std::size_t x = 0; x < xi_map_.size(); ++x) {
            std::size_t c = xi_map_[x].eps ? xi_map_[x].idx : M_ + xi_map_[x].idx;
            if (c == k) {
                return x;
            }
        }
        throw StructuralError("coordinate has no ξ label");
    }
    /// True when Δ^# lies on the first factor of the label (marking M).
    bool sharp_on_first_factor() const noexcept { return first_is_eps_; }

private:
    void add_even(const Weight &a)
    {
        pos_even_.push_back(a);
    }

    void fill_factor(bool on_eps, FactorKind kind, bool long_roots)
    {
        const std::size_t k = on_eps ? M_ : N_;
        auto basis = [&](std::size_t i) { return on_eps ? eps(i) : delta(i); };
        if (kind == FactorKind::none) {
            return;
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                add_even(basis(i) - basis(j));
                if (kind != FactorKind::A) {
                    add_even(basis(i) + basis(j));
                }
            }
        }
        if (kind == FactorKind::BC) {
            for (std::size_t i = 0; i < k; ++i) {
                add_even(long_roots ? Rational(2) * basis(i) : basis(i));
            }
        }
    }

    void fill_roots()
    {
        // ε block long (2ε_i) or short (ε_i) roots for BC factors.
        switch (shape_) {
        case Shape::GL:
            fill_factor(true, FactorKind::A, false);
            fill_factor(false, delta_kind_, false);
            for (std::size_t i = 0; i < M_; ++i) {
                for (std::size_t j = 0; j < N_; ++j) {
                    odd_.push_back(eps(i) - delta(j));
                    odd_.push_back(delta(j) - eps(i));
                }
            }
            break;
        case Shape::B_so:
        case Shape::B_sp: {
            bool so_eps = shape_ == Shape::B_so;
            fill_factor(true, FactorKind::BC, !so_eps);
            fill_factor(false, FactorKind::BC, so_eps);
            add_mixed_odd();
            for (std::size_t i = 0; i < (so_eps ? N_ : M_); ++i) {
                Weight b = so_eps ? delta(i) : eps(i);
                odd_.push_back(b);
                odd_.push_back(-b);
            }
            break;
        }
        case Shape::D_so:
            fill_factor(true, FactorKind::D, false);
            fill_factor(false, FactorKind::BC, true);
            add_mixed_odd();
            break;
        case Shape::D_sp:
            fill_factor(true, FactorKind::BC, true);
            fill_factor(false, FactorKind::D, false);
            add_mixed_odd();
            break;
        case Shape::C:
            fill_factor(true, FactorKind::BC, true);
            add_mixed_odd();
            break;
        case Shape::Q:
            fill_factor(true, FactorKind::A, false);
            for (const auto &a : pos_even_) {
                odd_.push_back(a);
                odd_.push_back(-a);
            }
            break;
        }
        std::sort(pos_even_.begin(), pos_even_.end());
        std::sort(odd_.begin(), odd_.end());
        for (const auto &a : pos_even_) {
            even_.push_back(a);
            even_.push_back(-a);
            bool on_eps = true;
            for (std::size_t j = 0; j < N_; ++j) {
                if (a.delta_coord(j) != 0) {
                    on_eps = false;
                }
            }
            (on_eps ? pos_sharp_ : pos_second_).push_back(a);
        }
        std::sort(even_.begin(), even_.end());
        for (const auto &a : even_) {
            if (bilinear_form(a, a) > 0) {
                sharp_.push_back(a);
            }
        }
        even_set_ = {even_.begin(), even_.end()};
        odd_set_ = {odd_.begin(), odd_.end()};
        sharp_set_ = {sharp_.begin(), sharp_.end()};
        pos_even_set_ = {pos_even_.begin(), pos_even_.end()};
        for (const auto &a : pos_even_) {
            bool decomposable = false;
            for (const auto &b : pos_even_) {
                if (pos_even_set_.count(a - b)) {
                    decomposable = true;
                    break;
                }
            }
            if (!decomposable) {
                even_simple_.push_back(a);
            }
        }
    }

    void add_mixed_odd()
    {
        for (std::size_t i = 0; i < M_; ++i) {
            for (std::size_t j = 0; j < N_; ++j) {
                for (int s1 : {1, -1}) {
                    for (int s2 : {1, -1}) {
                        odd_.push_back(Rational(s1) * eps(i) + Rational(s2) * delta(j));
                    }
                }
            }
        }
    }

    void fill_xi_map(bool first_is_eps)
    {
        first_is_eps_ = first_is_eps;
        std::size_t first = first_is_eps ? M_ : N_;
        std::size_t second = first_is_eps ? N_ : M_;
        for (std::size_t i = 0; i < first; ++i) {
            xi_map_.push_back({first_is_eps, i});
        }
        for (std::size_t i = 0; i < second; ++i) {
            xi_map_.push_back({!first_is_eps, i});
        }
    }

    SuperType type_;
    Shape shape_ = Shape::GL;
    std::size_t M_ = 0, N_ = 0;
    FactorKind eps_kind_ = FactorKind::A, delta_kind_ = FactorKind::A;
    bool first_is_eps_ = true;
    std::vector<Weight> pos_even_, odd_, even_, sharp_, pos_sharp_, pos_second_, even_simple_;
    std::set<Weight> even_set_, odd_set_, sharp_set_, pos_even_set_;
    std::vector<XiIndex> xi_map_;
};

inline bool is_isotropic(const Weight &a) { return bilinear_form(a, a) == 0; }

inline std::string to_string(Shape s)
{
    switch (s) {
    case Shape::GL: return "GL";
    case Shape::B_so: return "B_so";
    case Shape::B_sp: return "B_sp";
    case Shape::D_so: return "D_so";
    case Shape::D_sp: return "D_sp";
    case Shape::C: return "C";
    case Shape::Q: return "Q";
    }
    return "?";
}

} // namespace superdenom
