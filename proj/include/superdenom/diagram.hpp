// a/b bow diagrams of admissible pairs, their two moves and canonical forms.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "root_system.hpp"
#include "simple_system.hpp"

namespace superdenom
{

enum class Mark : char { a = 'a', b = 'b' };
enum class BowKind { smile, frown };
/// (M): Δ^# on the first factor of the label; (N): on the second.
enum class MarkingMode { M, N };

/// A bow joins positions left and left + 1.
struct Bow {
    std::size_t left = 0;
    BowKind kind = BowKind::smile;

    friend bool operator==(const Bow &, const Bow &) = default;
    friend auto operator<=>(const Bow &, const Bow &) = default;
};

/// Marks listed by increasing value of f_Π; bows sorted by left endpoint.
struct Diagram {
    std::vector<Mark> marks;
    std::vector<Bow> bows;
    MarkingMode mode = MarkingMode::M;

    friend bool operator==(const Diagram &, const Diagram &) = default;

    std::optional<std::size_t> bow_at(std::size_t pos) const
    {
        for (std::size_t i = 0; i < bows.size(); ++i) {
            if (bows[i].left == pos || bows[i].left + 1 == pos) {
                return i;
            }
        }
        return std::nullopt;
    }
    bool is_vertex(std::size_t pos) const { return bow_at(pos).has_value(); }
    bool has_frown() const
    {
        return std::any_of(bows.begin(), bows.end(), [](const Bow &b) { return b.kind == BowKind::frown; });
    }
};

inline std::string to_string(MarkingMode m) { return m == MarkingMode::M ? "M" : "N"; }

/// ASCII form uses "(_)" for ⌣ and "(^)" for ⌢; the unicode form uses the bow glyphs.
inline std::string to_string(const Diagram &d, bool unicode = false)
{
    std::string s;
    for (std::size_t i = 0; i < d.marks.size(); ++i) {
        s += static_cast<char>(d.marks[i]);
        for (const auto &b : d.bows) {
            if (b.left == i) {
                if (unicode) {
                    s += b.kind == BowKind::smile ? "⌣" : "⌢";
                } else {
                    s += b.kind == BowKind::smile ? "(_)" : "(^)";
                }
            }
        }
    }
    return s;
}

/// Checks the structural rules; frowns are allowed only as a leading "a⌢b".
inline void validate(const Diagram &d, bool frown_allowed)
{
    auto fail = [&](const std::string &why) { throw StructuralError("diagram " + to_string(d) + ": " + why); };
    std::size_t na = 0, nb = 0;
    for (auto m : d.marks) {
        (m == Mark::a ? na : nb) += 1;
    }
    if (na < nb) {
        fail("fewer a's than b's");
    }
    std::set<std::size_t> used;
    std::size_t frowns = 0;
    for (std::size_t i = 0; i < d.bows.size(); ++i) {
        const auto &b = d.bows[i];
        if (b.left + 1 >= d.marks.size()) {
            fail("bow runs past the end");
        }
        if (i > 0 && !(d.bows[i - 1].left < b.left)) {
            fail("bows are not sorted");
        }
        if (!used.insert(b.left).second || !used.insert(b.left + 1).second) {
            fail("bows share a vertex");
        }
        if (d.marks[b.left] == d.marks[b.left + 1]) {
            fail("bow joins equal marks");
        }
        if (b.kind == BowKind::frown) {
            ++frowns;
            if (!frown_allowed) {
                fail("frown outside D(m,n), m > n");
            }
            if (b.left != 0 || d.marks[0] != Mark::a) {
                fail("frown is not the leading a-frown-b");
            }
        }
    }
    if (frowns > 1) {
        fail("more than one frown");
    }
    for (std::size_t i = 0; i < d.marks.size(); ++i) {
        if (d.marks[i] == Mark::b && !used.count(i)) {
            fail("b at position " + std::to_string(i) + " is not a vertex");
        }
    }
}

inline bool frowns_allowed(const RootSystem &rs) { return rs.shape() == Shape::D_so; }

/// Reads "aaa(_)bb(_)aa" or "aaa⌣bb⌣aa".
inline Diagram parse_diagram(const std::string &text, MarkingMode mode = MarkingMode::M)
{
    Diagram d;
    d.mode = mode;
    std::size_t i = 0;
    auto bow = [&](BowKind k) {
        if (d.marks.empty()) {
            throw ValidationError("diagram text starts with a bow: " + text);
        }
        d.bows.push_back({d.marks.size() - 1, k});
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == 'a' || c == 'b') {
            d.marks.push_back(static_cast<Mark>(c));
            ++i;
        } else if (text.compare(i, 3, "(_)") == 0) {
            bow(BowKind::smile);
            i += 3;
        } else if (text.compare(i, 3, "(^)") == 0) {
            bow(BowKind::frown);
            i += 3;
        } else if (text.compare(i, 3, "⌣") == 0) {
            bow(BowKind::smile);
            i += 3;
        } else if (text.compare(i, 3, "⌢") == 0) {
            bow(BowKind::frown);
            i += 3;
        } else if (c == ' ') {
            ++i;
        } else {
            throw ValidationError("unexpected character in diagram text at offset " + std::to_string(i));
        }
    }
    try {
        validate(d, true);
    } catch (const StructuralError &e) {
        throw ValidationError(e.what());
    }
    return d;
}

namespace detail
{

/// Coordinates (ε then δ) sorted by increasing f_Π value.
inline std::vector<std::size_t> coordinate_order(const Functional &f)
{
    std::vector<std::size_t> order(f.coords.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return f.coords[x] < f.coords[y]; });
    return order;
}

/// The root ξ_hi − ξ_lo (or the sum) joining the coordinates at two adjacent positions.
inline Weight bow_root(const RootSystem &rs, std::size_t k_lo, std::size_t k_hi, BowKind kind)
{
    Weight w = rs.zero();
    w[k_hi] = 1;
    w[k_lo] = kind == BowKind::smile ? -1 : 1;
    return w;
}

} // namespace detail

/// Draws the diagram of a pair: marks by f_Π order, a bow for each element of S.
inline Diagram from_pair(const AdmissiblePair &pair, const RootSystem &rs)
{
    if (rs.shape() == Shape::C || rs.shape() == Shape::Q) {
        throw DomainError("diagrams are defined for GL, B and D only");
    }
    Functional f = functional_for(pair.pi, rs);
    auto order = detail::coordinate_order(f);
    std::vector<std::size_t> pos_of(order.size());
    Diagram d;
    d.mode = rs.sharp_on_first_factor() ? MarkingMode::M : MarkingMode::N;
    for (std::size_t p = 0; p < order.size(); ++p) {
        pos_of[order[p]] = p;
        d.marks.push_back(order[p] < rs.eps_count() ? Mark::a : Mark::b);
    }
    for (const auto &beta : pair.S) {
        std::vector<std::size_t> nz;
        for (std::size_t k = 0; k < beta.dim(); ++k) {
            if (beta[k] != 0) {
                nz.push_back(k);
            }
        }
        if (nz.size() != 2 || abs(beta[nz[0]]) != 1 || abs(beta[nz[1]]) != 1) {
            throw StructuralError("S element " + to_string(beta) + " is not of the form +-xi_i +- xi_j");
        }
        std::size_t p0 = pos_of[nz[0]], p1 = pos_of[nz[1]];
        std::size_t lo = std::min(p0, p1);
        if (std::max(p0, p1) != lo + 1) {
            throw StructuralError("S element " + to_string(beta) + " joins non-adjacent points");
        }
        bool sum = beta[nz[0]] == beta[nz[1]];
        if (sum && beta[nz[0]] < 0) {
            throw StructuralError("S element " + to_string(beta) + " is a negative sum");
        }
        d.bows.push_back({lo, sum ? BowKind::frown : BowKind::smile});
    }
    std::sort(d.bows.begin(), d.bows.end());
    validate(d, frowns_allowed(rs));
    return d;
}

/// Exchanges the marks of a ⌣ bow (the odd reflection at its root).
inline Diagram move_swap(const Diagram &d, std::size_t bow)
{
    if (bow >= d.bows.size()) {
        throw DomainError("swap: no bow with index " + std::to_string(bow));
    }
    if (d.bows[bow].kind != BowKind::smile) {
        throw DomainError("swap: bow " + std::to_string(bow) + " is a frown");
    }
    Diagram out = d;
    std::swap(out.marks[d.bows[bow].left], out.marks[d.bows[bow].left + 1]);
    return out;
}

/// "ab⌣a" ↔ "a⌣ba" on the window starting at pos, the unbowed a not being a vertex.
inline Diagram move_slide(const Diagram &d, std::size_t pos)
{
    auto mismatch = [&] {
        return DomainError("slide: window at " + std::to_string(pos) + " of " + to_string(d) +
                           " is neither ab(_)a nor a(_)ba with a free a");
    };
    if (pos + 2 >= d.marks.size() || d.marks[pos] != Mark::a || d.marks[pos + 1] != Mark::b ||
        d.marks[pos + 2] != Mark::a) {
        throw mismatch();
    }
    auto bi = d.bow_at(pos + 1);
    if (!bi || d.bows[*bi].kind != BowKind::smile) {
        throw mismatch();
    }
    Diagram out = d;
    if (d.bows[*bi].left == pos + 1 && !d.is_vertex(pos)) {
        out.bows[*bi].left = pos;
    } else if (d.bows[*bi].left == pos && !d.is_vertex(pos + 2)) {
        out.bows[*bi].left = pos + 1;
    } else {
        throw mismatch();
    }
    return out;
}

enum class MoveKind { swap, slide };

/// swap: argument is a bow index; slide: argument is the window start.
struct Move {
    MoveKind kind;
    std::size_t arg;
    friend bool operator==(const Move &, const Move &) = default;
};

inline std::string to_string(const Move &m)
{
    return (m.kind == MoveKind::swap ? "swap " : "slide ") + std::to_string(m.arg);
}

struct Canonical {
    Diagram diagram;
    std::vector<Move> word;
};

/// Pushes every b to the left as a "b⌣a" block, leaving the a's trailing; a leading "a⌢b" is kept.
inline Canonical canonical_form(const Diagram &d)
{
    Canonical out{d, {}};
    Diagram &cur = out.diagram;
    auto apply = [&](Move m) {
        cur = m.kind == MoveKind::swap ? move_swap(cur, m.arg) : move_slide(cur, m.arg);
        out.word.push_back(m);
    };
    std::size_t p = 0;
    if (!cur.bows.empty() && cur.bows.front().kind == BowKind::frown) {
        p = 2;
    }
    while (true) {
        std::size_t q = p;
        while (q < cur.marks.size() && cur.marks[q] != Mark::b) {
            ++q;
        }
        if (q == cur.marks.size()) {
            break;
        }
        while (true) {
            std::size_t bi = *cur.bow_at(q);
            const Bow &b = cur.bows[bi];
            if (b.left == q - 1 && q > p) {
                apply({MoveKind::swap, bi}); // a⌣b → b⌣a
                --q;
            } else if (q == p) {
                break; // b⌣a in place
            } else {
                apply({MoveKind::slide, q - 1}); // a b⌣a → a⌣b a
            }
        }
        p += 2;
    }
    return out;
}

/// The pair with a given diagram: a's read right to left are ε_1.., b's are δ_1..;
/// f_Π takes consecutive values starting at 1, 1/2 or 0.
inline AdmissiblePair reconstruct(const Diagram &d, const RootSystem &rs)
{
    validate(d, frowns_allowed(rs));
    const std::size_t M = rs.eps_count(), N = rs.delta_count();
    std::size_t na = 0;
    for (auto m : d.marks) {
        na += m == Mark::a;
    }
    if (d.marks.size() != M + N || na != M) {
        throw DomainError("diagram " + to_string(d) + " does not match " + to_string(rs.type()));
    }
    std::vector<std::size_t> coord(d.marks.size());
    std::size_t ia = M, ib = N;
    for (std::size_t p = 0; p < d.marks.size(); ++p) {
        coord[p] = d.marks[p] == Mark::a ? --ia : M + --ib;
    }
    for (Rational c : {Rational(1), Rational(1, 2), Rational(0)}) {
        Functional f;
        f.coords.assign(M + N, 0);
        for (std::size_t p = 0; p < coord.size(); ++p) {
            f.coords[coord[p]] = c + static_cast<int>(p);
        }
        std::vector<Weight> pi;
        for (const auto *roots : {&rs.even(), &rs.odd()}) {
            for (const auto &a : *roots) {
                if (f(a) == 1) {
                    pi.push_back(a);
                }
            }
        }
        std::vector<Weight> S;
        for (const auto &b : d.bows) {
            S.push_back(detail::bow_root(rs, coord[b.left], coord[b.left + 1], b.kind));
        }
        if (pi.size() != M + N && !(rs.shape() == Shape::GL && pi.size() + 1 == M + N)) {
            continue;
        }
        auto ok = is_admissible(S, pi, rs);
        if (ok.ok) {
            return make_pair(S, pi, rs);
        }
    }
    throw DomainError("diagram " + to_string(d) + " has no admissible pair for " + to_string(rs.type()));
}

/// True when α = ±(ξ_i + ξ_j) with i ≠ j.
inline bool is_mixed_sum(const Weight &alpha)
{
    std::vector<Rational> nz;
    for (std::size_t k = 0; k < alpha.dim(); ++k) {
        if (alpha[k] != 0) {
            nz.push_back(alpha[k]);
        }
    }
    return nz.size() == 2 && nz[0] == nz[1];
}

/// Second-type moves realised by the diagram calculus: γ + γ′ is not of the form ±(ξ_i + ξ_j), i ≠ j.
/// The excluded moves still satisfy the exchange hypotheses, and for D(m,n), m > n, they join the two classes.
inline bool is_diagram_move(const Weight &gamma, const Weight &gamma_p) { return !is_mixed_sum(gamma + gamma_p); }

/// Equivalence classes of admissible pairs under odd reflections in S and second-type moves.
struct ClassReport {
    std::size_t pair_count = 0;
    std::size_t simple_system_count = 0;
    /// Components under odd reflections and the diagram second-type moves.
    std::size_t components = 0;
    /// Components when every pair (γ, γ′) meeting the exchange hypotheses is allowed.
    std::size_t lemma_components = 0;
    /// Canonical diagram of each component, in component order.
    std::vector<Diagram> classes;
    /// Pairs whose S is not drawable (a negative sum or a non-adjacent sum).
    std::size_t undrawable = 0;
    /// Each component has one canonical form and different components have different ones.
    bool consistent = true;
    /// (S, Π), (S, Π′) admissible forces Π = Π′.
    bool pi_determined_by_s = true;
    std::size_t expected = 1;

    bool ok() const { return consistent && pi_determined_by_s && components == expected; }
};

inline std::size_t expected_class_count(const RootSystem &rs) { return rs.shape() == Shape::D_so ? 2 : 1; }

namespace detail
{

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::size_t count()
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < parent.size(); ++i) {
            c += find(i) == i;
        }
        return c;
    }
};

} // namespace detail

inline ClassReport equivalence_classes(const RootSystem &rs, std::size_t cap = 100000)
{
    if (rs.shape() == Shape::C || rs.shape() == Shape::Q || rs.defect() == 0) {
        throw DomainError("equivalence classes are computed for GL, B and D with defect >= 1");
    }
    ClassReport rep;
    rep.expected = expected_class_count(rs);
    auto pairs = enumerate_admissible_pairs(rs, cap);
    rep.pair_count = pairs.size();
    rep.simple_system_count = enumerate_simple_systems(rs, cap).size();

    std::map<std::pair<std::vector<Weight>, std::vector<Weight>>, std::size_t> index;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        index.emplace(pair_key(pairs[i]), i);
    }
    auto at = [&](const AdmissiblePair &q) {
        auto it = index.find(pair_key(q));
        if (it == index.end()) {
            throw StructuralError("move leaves the enumerated set of admissible pairs");
        }
        return it->second;
    };
    detail::UnionFind diag(pairs.size()), lemma(pairs.size());
    std::map<std::vector<Weight>, std::vector<Weight>> pi_of_s;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto &p = pairs[i];
        for (const auto &beta : p.S) {
            std::size_t j = at(odd_reflection(p, beta, rs));
            diag.unite(i, j);
            lemma.unite(i, j);
        }
        for (const auto &[g, gp] : second_type_moves(p, rs)) {
            std::size_t j = at(second_type_move(p, g, gp, rs));
            lemma.unite(i, j);
            if (is_diagram_move(g, gp)) {
                diag.unite(i, j);
            }
        }
        auto [it, fresh] = pi_of_s.emplace(p.sorted_s(), p.pi.sorted_key());
        if (!fresh && it->second != p.pi.sorted_key()) {
            rep.pi_determined_by_s = false;
        }
    }
    rep.lemma_components = lemma.count();

    std::map<std::size_t, std::set<std::string>> forms;
    std::map<std::size_t, Diagram> first_form;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::size_t r = diag.find(i);
        if (!forms.count(r)) {
            roots.push_back(r);
            forms[r];
        }
        try {
            auto c = canonical_form(from_pair(pairs[i], rs)).diagram;
            forms[r].insert(to_string(c));
            first_form.emplace(r, c);
        } catch (const StructuralError &) {
            ++rep.undrawable;
        }
    }
    rep.components = roots.size();
    std::set<std::string> all;
    for (auto r : roots) {
        if (forms[r].size() != 1) {
            rep.consistent = false;
            continue;
        }
        if (!all.insert(*forms[r].begin()).second) {
            rep.consistent = false;
        }
        rep.classes.push_back(first_form.at(r));
    }
    return rep;
}

} // namespace superdenom
