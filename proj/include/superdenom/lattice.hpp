// Exact rational linear algebra over the ε/δ coordinate lattice.
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace superdenom
{

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Error categories shared by every module.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct StructuralError : Error {
    using Error::Error;
};
struct ResourceError : Error {
    using Error::Error;
};

inline std::string to_string(const Rational &q)
{
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) {
        os << '/' << denominator(q);
    }
    return os.str();
}

inline Rational parse_rational(const std::string &s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        return Rational(BigInt(s));
    }
    BigInt den(s.substr(slash + 1));
    if (den == 0) {
        throw ValidationError("zero denominator in rational '" + s + "'");
    }
    return Rational(BigInt(s.substr(0, slash)), den);
}

inline bool is_integer(const Rational &q) { return denominator(q) == 1; }

/// A vector in V = span{ε_1..ε_m, δ_1..δ_n} with exact rational coordinates.
///
/// Coordinates are stored ε first, then δ. Two weights are comparable only
/// when they live over the same (m, n).
class Weight
{
public:
    Weight() = default;
    Weight(std::size_t m, std::size_t n) : m_(m), coords_(m + n) {}
    Weight(std::size_t m, std::vector<Rational> coords) : m_(m), coords_(std::move(coords))
    {
        if (m_ > coords_.size()) {
            throw StructuralError("weight: eps dimension exceeds coordinate count");
        }
    }

    static Weight eps(std::size_t m, std::size_t n, std::size_t i)
    {
        Weight w(m, n);
        w.coords_.at(i) = 1;
        return w;
    }
    static Weight delta(std::size_t m, std::size_t n, std::size_t j)
    {
        Weight w(m, n);
        w.coords_.at(m + j) = 1;
        return w;
    }

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return coords_.size() - m_; }
    std::size_t dim() const noexcept { return coords_.size(); }

    const Rational &eps_coord(std::size_t i) const { return coords_.at(i); }
    const Rational &delta_coord(std::size_t j) const { return coords_.at(m_ + j); }
    Rational &eps_coord(std::size_t i) { return coords_.at(i); }
    Rational &delta_coord(std::size_t j) { return coords_.at(m_ + j); }

    const Rational &operator[](std::size_t k) const { return coords_[k]; }
    Rational &operator[](std::size_t k) { return coords_[k]; }
    const std::vector<Rational> &coords() const noexcept { return coords_; }

    bool is_zero() const
    {
        return std::all_of(coords_.begin(), coords_.end(), [](const Rational &q) { return q == 0; });
    }

    Weight &operator+=(const Weight &o)
    {
        check_same(o);
        for (std::size_t k = 0; k < coords_.size(); ++k) {
            coords_[k] += o.coords_[k];
        }
        return *this;
    }
    Weight &operator-=(const Weight &o)
    {
        check_same(o);
        for (std::size_t k = 0; k < coords_.size(); ++k) {
            coords_[k] -= o.coords_[k];
        }
        return *this;
    }
    Weight &operator*=(const Rational &c)
    {
        for (auto &q : coords_) {
            q *= c;
        }
        return *this;
    }
    friend Weight operator+(Weight a, const Weight &b) { return a += b; }
    friend Weight operator-(Weight a, const Weight &b) { return a -= b; }
    friend Weight operator*(const Rational &c, Weight a) { return a *= c; }
    friend Weight operator-(Weight a)
    {
        for (auto &q : a.coords_) {
            q = -q;
        }
        return a;
    }

    friend bool operator==(const Weight &a, const Weight &b)
    {
        return a.m_ == b.m_ && a.coords_ == b.coords_;
    }
    // Lexicographic; gives std::set / sort a deterministic order.
    friend bool operator<(const Weight &a, const Weight &b)
    {
        if (a.m_ != b.m_) {
            return a.m_ < b.m_;
        }
        return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                            b.coords_.end());
    }

    void check_same(const Weight &o) const
    {
        if (o.m_ != m_ || o.coords_.size() != coords_.size()) {
            throw StructuralError("weight dimension mismatch");
        }
    }

private:
    std::size_t m_ = 0;
    std::vector<Rational> coords_;
};

/// Human-readable form such as "e1-d2" or "1/2e1+2d1".
inline std::string to_string(const Weight &w)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < w.dim(); ++k) {
        const Rational &c = w[k];
        if (c == 0) {
            continue;
        }
        if (c < 0) {
            os << '-';
        } else if (!first) {
            os << '+';
        }
        Rational a = c < 0 ? Rational(-c) : c;
        if (a != 1) {
            os << to_string(a);
        }
        if (k < w.m()) {
            os << 'e' << (k + 1);
        } else {
            os << 'd' << (k - w.m() + 1);
        }
        first = false;
    }
    if (first) {
        os << '0';
    }
    return os.str();
}

inline std::ostream &operator<<(std::ostream &os, const Weight &w) { return os << to_string(w); }

/// The normalized invariant form: (ε_i, ε_j) = δ_ij = −(δ_i, δ_j).
inline Rational bilinear_form(const Weight &x, const Weight &y)
{
    x.check_same(y);
    Rational s = 0;
    for (std::size_t i = 0; i < x.m(); ++i) {
        s += x.eps_coord(i) * y.eps_coord(i);
    }
    for (std::size_t j = 0; j < x.n(); ++j) {
        s -= x.delta_coord(j) * y.delta_coord(j);
    }
    return s;
}

/// Coordinates of a weight in a fixed basis; index k refers to basis element k.
struct ConeCoords {
    std::vector<Rational> coeffs;

    friend bool operator==(const ConeCoords &, const ConeCoords &) = default;
    ConeCoords &operator+=(const ConeCoords &o)
    {
        if (coeffs.size() < o.coeffs.size()) {
            coeffs.resize(o.coeffs.size());
        }
        for (std::size_t k = 0; k < o.coeffs.size(); ++k) {
            coeffs[k] += o.coeffs[k];
        }
        return *this;
    }
};

inline Rational height(const ConeCoords &mu)
{
    Rational h = 0;
    for (const auto &c : mu.coeffs) {
        h += c;
    }
    return h;
}

enum class ConeRing { integer, rational };

/// Exact coordinate solver for a linearly independent family of weights.
///
/// Precomputes a left inverse on a set of pivot coordinates, so each query
/// is a k×k product followed by a reconstruction check.
class SpanBasis
{
public:
    SpanBasis() = default;
    explicit SpanBasis(std::vector<Weight> basis) : basis_(std::move(basis))
    {
        if (basis_.empty()) {
            return;
        }
        const std::size_t k = basis_.size();
        const std::size_t d = basis_.front().dim();
        for (const auto &b : basis_) {
            basis_.front().check_same(b);
        }
        if (k > d) {
            throw ValidationError("basis: more vectors than dimensions, not linearly independent");
        }
        // Row-reduce the k×d matrix whose rows are the basis vectors to find pivot coordinates.
        std::vector<std::vector<Rational>> rows(k, std::vector<Rational>(d));
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                rows[r][c] = basis_[r][c];
            }
        }
        std::size_t rank = 0;
        for (std::size_t c = 0; c < d && rank < k; ++c) {
            std::size_t piv = rank;
            while (piv < k && rows[piv][c] == 0) {
                ++piv;
            }
            if (piv == k) {
                continue;
            }
            std::swap(rows[piv], rows[rank]);
            for (std::size_t r = 0; r < k; ++r) {
                if (r != rank && rows[r][c] != 0) {
                    Rational f = rows[r][c] / rows[rank][c];
                    for (std::size_t cc = c; cc < d; ++cc) {
                        rows[r][cc] -= f * rows[rank][cc];
                    }
                }
            }
            pivots_.push_back(c);
            ++rank;
        }
        if (rank < k) {
            throw ValidationError("basis: vectors are linearly dependent");
        }
        // Invert the k×k submatrix M[c][r] = basis_[r][pivots_[c]].
        std::vector<std::vector<Rational>> a(k, std::vector<Rational>(2 * k));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t r = 0; r < k; ++r) {
                a[i][r] = basis_[r][pivots_[i]];
            }
            a[i][k + i] = 1;
        }
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t piv = c;
            while (a[piv][c] == 0) {
                ++piv;
            }
            std::swap(a[piv], a[c]);
            Rational inv = 1 / a[c][c];
            for (auto &x : a[c]) {
                x *= inv;
            }
            for (std::size_t r = 0; r < k; ++r) {
                if (r != c && a[r][c] != 0) {
                    Rational f = a[r][c];
                    for (std::size_t cc = 0; cc < 2 * k; ++cc) {
                        a[r][cc] -= f * a[c][cc];
                    }
                }
            }
        }
        inverse_.assign(k, std::vector<Rational>(k));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                inverse_[i][j] = a[i][k + j];
            }
        }
    }

    std::size_t size() const noexcept { return basis_.size(); }
    const std::vector<Weight> &vectors() const noexcept { return basis_; }

    /// Coordinates of ν in the basis, or nothing when ν is outside the span.
    std::optional<std::vector<Rational>> coords(const Weight &nu) const
    {
        const std::size_t k = basis_.size();
        if (k == 0) {
            if (nu.is_zero()) {
                return std::vector<Rational>{};
            }
            return std::nullopt;
        }
        basis_.front().check_same(nu);
        std::vector<Rational> x(k);
        for (std::size_t i = 0; i < k; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < k; ++j) {
                s += inverse_[i][j] * nu[pivots_[j]];
            }
            x[i] = s;
        }
        if (reconstruct(x) != nu) {
            return std::nullopt;
        }
        return x;
    }

    Weight reconstruct(const std::vector<Rational> &x) const
    {
        Weight w = Weight(basis_.front().m(), basis_.front().n());
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] != 0) {
                w += x[i] * basis_[i];
            }
        }
        return w;
    }

    /// Integer coordinates, or nothing when ν is outside the lattice spanned by the basis.
    std::optional<std::vector<int>> int_coords(const Weight &nu) const
    {
        auto x = coords(nu);
        if (!x) {
            return std::nullopt;
        }
        std::vector<int> out;
        out.reserve(x->size());
        for (const auto &q : *x) {
            if (!is_integer(q)) {
                return std::nullopt;
            }
            out.push_back(static_cast<int>(numerator(q)));
        }
        return out;
    }

private:
    std::vector<Weight> basis_;
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<Rational>> inverse_;
};

/// Membership of ν in ℤ_{≥0}Π (integer ring) or ℚ_{≥0}Π (rational ring).
inline std::optional<ConeCoords> in_positive_cone(const Weight &nu, const SpanBasis &basis, ConeRing ring)
{
    auto x = basis.coords(nu);
    if (!x) {
        return std::nullopt;
    }
    for (const auto &q : *x) {
        if (q < 0) {
            return std::nullopt;
        }
        if (ring == ConeRing::integer && !is_integer(q)) {
            return std::nullopt;
        }
    }
    return ConeCoords{std::move(*x)};
}

inline std::optional<ConeCoords> in_positive_cone(const Weight &nu, std::span<const Weight> basis, ConeRing ring)
{
    return in_positive_cone(nu, SpanBasis(std::vector<Weight>(basis.begin(), basis.end())), ring);
}

} // namespace superdenom

template <>
struct std::hash<superdenom::Weight> {
    std::size_t operator()(const superdenom::Weight &w) const noexcept
    {
        std::size_t h = w.m() * 0x9e3779b97f4a7c15ULL;
        for (const auto &q : w.coords()) {
            auto num = static_cast<long long>(numerator(q));
            auto den = static_cast<long long>(denominator(q));
            h ^= std::hash<long long>{}(num * 1000003LL + den) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};
