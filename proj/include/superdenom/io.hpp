// JSON reports (schema "superdenom/1"). Rationals and weights are strings, so documents carry no floats
// and re-serialize byte for byte.
#pragma once

#include <cctype>
#include <string>
#include <vector>

#include <json.hpp>

#include "denominator.hpp"
#include "diagram.hpp"

namespace superdenom
{

using Json = nlohmann::ordered_json;

inline constexpr const char *schema_id = "superdenom/1";

/// Inverse of to_string(Weight): terms like "e1", "-1/2d2", "+3e4"; "0" is the zero weight.
inline Weight parse_weight(const std::string &text, std::size_t m, std::size_t n)
{
    Weight w(m, n);
    if (text == "0") {
        return w;
    }
    std::size_t i = 0;
    auto fail = [&](const std::string &why) {
        throw ValidationError("weight '" + text + "': " + why);
    };
    if (text.empty()) {
        fail("empty");
    }
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        }
        std::size_t c0 = i;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) {
            ++i;
        }
        Rational c = c0 == i ? Rational(1) : parse_rational(text.substr(c0, i - c0));
        if (i >= text.size() || (text[i] != 'e' && text[i] != 'd')) {
            fail("expected e or d at position " + std::to_string(i));
        }
        bool eps = text[i++] == 'e';
        std::size_t d0 = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (d0 == i) {
            fail("missing index");
        }
        std::size_t idx = std::stoul(text.substr(d0, i - d0));
        if (idx == 0 || idx > (eps ? m : n)) {
            fail("index out of range");
        }
        Rational &slot = eps ? w.eps_coord(idx - 1) : w.delta_coord(idx - 1);
        slot += sign * c;
    }
    return w;
}

inline Json to_json(const Rational &q) { return to_string(q); }
inline Json to_json(const Weight &w) { return to_string(w); }

inline Json to_json(const std::vector<Weight> &ws)
{
    Json a = Json::array();
    for (const auto &w : ws) {
        a.push_back(to_string(w));
    }
    return a;
}

inline std::vector<Weight> weights_from_json(const Json &j, const RootSystem &rs)
{
    std::vector<Weight> out;
    for (const auto &x : j) {
        out.push_back(parse_weight(x.get<std::string>(), rs.eps_count(), rs.delta_count()));
    }
    return out;
}

inline Json to_json(const SuperType &t)
{
    Json j;
    j["label"] = to_string(t);
    j["family"] = to_string(t.family);
    j["m"] = t.m;
    j["n"] = t.n;
    j["sharp"] = t.sharp ? Json(to_string(*t.sharp)) : Json(nullptr);
    return j;
}

inline SuperType super_type_from_json(const Json &j)
{
    SuperType t{parse_family(j.at("family").get<std::string>()), j.at("m").get<int>(), j.at("n").get<int>(), {}};
    if (!j.at("sharp").is_null()) {
        t.sharp = parse_sharp(j.at("sharp").get<std::string>());
    }
    return t;
}

inline Json to_json(const SignedPermutation &w)
{
    Json j;
    j["cycles"] = to_string(w);
    j["eps"] = w.eps_images();
    j["delta"] = w.delta_images();
    j["sgn"] = w.sgn();
    return j;
}

inline SignedPermutation permutation_from_json(const Json &j)
{
    return SignedPermutation(j.at("eps").get<std::vector<int>>(), j.at("delta").get<std::vector<int>>());
}

inline Json to_json(const AdmissiblePair &p)
{
    Json j;
    j["S"] = to_json(p.S);
    j["pi"] = to_json(p.pi.simple_roots);
    j["rho"] = to_string(p.pi.rho);
    return j;
}

inline AdmissiblePair pair_from_json(const Json &j, const RootSystem &rs)
{
    return make_pair(weights_from_json(j.at("S"), rs), weights_from_json(j.at("pi"), rs), rs);
}

inline Json to_json(const std::optional<Discrepancy> &d)
{
    if (!d) {
        return nullptr;
    }
    Json j;
    j["exponent"] = to_string(d->exponent);
    j["key"] = d->key;
    j["lhs"] = to_string(d->lhs);
    j["rhs"] = to_string(d->rhs);
    return j;
}

inline std::optional<Discrepancy> discrepancy_from_json(const Json &j, const RootSystem &rs)
{
    if (j.is_null()) {
        return std::nullopt;
    }
    return Discrepancy{j.at("key").get<std::vector<int>>(),
                       parse_weight(j.at("exponent").get<std::string>(), rs.eps_count(), rs.delta_count()),
                       parse_rational(j.at("lhs").get<std::string>()), parse_rational(j.at("rhs").get<std::string>())};
}

inline Json header(const std::string &kind)
{
    Json j;
    j["schema"] = schema_id;
    j["kind"] = kind;
    return j;
}

inline Json to_json(const VerificationReport &r)
{
    Json j = header("verify");
    j["system"] = to_json(r.system);
    j["variant"] = r.variant;
    j["pair"] = to_json(r.pair);
    j["height"] = r.height;
    j["group_order"] = r.group_order;
    j["lhs_terms"] = r.lhs_terms;
    j["rhs_terms"] = r.rhs_terms;
    j["equal"] = r.equal;
    j["first_discrepancy"] = to_json(r.first_discrepancy);
    j["expanded_equal"] = r.expanded_equal;
    j["expanded_discrepancy"] = to_json(r.expanded_discrepancy);
    Json skew;
    skew["checked"] = r.skew_checked;
    skew["ok"] = r.skew_ok;
    skew["generator"] = r.skew_generator ? to_json(*r.skew_generator) : Json(nullptr);
    skew["witness"] = to_json(r.skew_witness);
    j["skew"] = skew;
    j["e_rho_coefficient"] = to_string(r.e_rho_coefficient);
    j["symbolic"] = r.symbolic ? Json(*r.symbolic) : Json(nullptr);
    Json t = Json::object();
    for (const auto &[stage, us] : r.timings_us) {
        t[stage] = us;
    }
    j["timings_us"] = t;
    j["ok"] = r.ok();
    return j;
}

inline VerificationReport verification_report_from_json(const Json &j)
{
    if (j.at("schema") != schema_id || j.at("kind") != "verify") {
        throw ValidationError("not a superdenom/1 verify report");
    }
    VerificationReport r;
    r.system = super_type_from_json(j.at("system"));
    auto rs = RootSystem::build(r.system);
    r.variant = j.at("variant").get<std::string>();
    r.pair = pair_from_json(j.at("pair"), rs);
    r.height = j.at("height").get<int>();
    r.group_order = j.at("group_order").get<std::size_t>();
    r.lhs_terms = j.at("lhs_terms").get<std::size_t>();
    r.rhs_terms = j.at("rhs_terms").get<std::size_t>();
    r.equal = j.at("equal").get<bool>();
    r.first_discrepancy = discrepancy_from_json(j.at("first_discrepancy"), rs);
    r.expanded_equal = j.at("expanded_equal").get<bool>();
    r.expanded_discrepancy = discrepancy_from_json(j.at("expanded_discrepancy"), rs);
    const Json &skew = j.at("skew");
    r.skew_checked = skew.at("checked").get<bool>();
    r.skew_ok = skew.at("ok").get<bool>();
    if (!skew.at("generator").is_null()) {
        r.skew_generator = permutation_from_json(skew.at("generator"));
    }
    r.skew_witness = discrepancy_from_json(skew.at("witness"), rs);
    r.e_rho_coefficient = parse_rational(j.at("e_rho_coefficient").get<std::string>());
    if (!j.at("symbolic").is_null()) {
        r.symbolic = j.at("symbolic").get<bool>();
    }
    for (const auto &[stage, us] : j.at("timings_us").items()) {
        r.timings_us.push_back({stage, us.get<std::int64_t>()});
    }
    return r;
}

inline Json to_json(const QnReport &r)
{
    Json j = header("qn");
    j["n"] = r.n;
    j["S"] = to_json(r.S);
    j["height"] = r.height;
    j["convention"] = r.convention;
    j["a_S"] = to_string(r.a_S);
    j["expected_abs"] = r.expected_abs ? Json(*r.expected_abs) : Json(nullptr);
    j["lemma_literal_sum"] = to_string(r.lemma_literal_sum);
    j["lemma_reversed_sum"] = to_string(r.lemma_reversed_sum);
    j["rhs_zero_case"] = r.rhs_zero_case;
    j["equal"] = r.equal;
    j["first_discrepancy"] = to_json(r.first_discrepancy);
    j["symbolic"] = r.symbolic ? Json(*r.symbolic) : Json(nullptr);
    j["ok"] = r.ok();
    return j;
}

inline QnReport qn_report_from_json(const Json &j)
{
    if (j.at("schema") != schema_id || j.at("kind") != "qn") {
        throw ValidationError("not a superdenom/1 qn report");
    }
    QnReport r;
    r.n = j.at("n").get<int>();
    auto rs = RootSystem::build({Family::Q, r.n, r.n, {}});
    r.S = weights_from_json(j.at("S"), rs);
    r.height = j.at("height").get<int>();
    r.convention = j.at("convention").get<std::string>();
    r.a_S = parse_rational(j.at("a_S").get<std::string>());
    if (!j.at("expected_abs").is_null()) {
        r.expected_abs = j.at("expected_abs").get<std::size_t>();
    }
    r.lemma_literal_sum = parse_rational(j.at("lemma_literal_sum").get<std::string>());
    r.lemma_reversed_sum = parse_rational(j.at("lemma_reversed_sum").get<std::string>());
    r.rhs_zero_case = j.at("rhs_zero_case").get<bool>();
    r.equal = j.at("equal").get<bool>();
    r.first_discrepancy = discrepancy_from_json(j.at("first_discrepancy"), rs);
    if (!j.at("symbolic").is_null()) {
        r.symbolic = j.at("symbolic").get<bool>();
    }
    return r;
}

inline Json build_report(const RootSystem &rs)
{
    Json j = header("build");
    j["system"] = to_json(rs.type());
    j["shape"] = to_string(rs.shape());
    j["eps_count"] = rs.eps_count();
    j["delta_count"] = rs.delta_count();
    j["defect"] = rs.defect();
    j["sharp_on_first_factor"] = rs.sharp_on_first_factor();
    Json xi = Json::array();
    for (const auto &x : rs.xi_map()) {
        xi.push_back(std::string(x.eps ? "e" : "d") + std::to_string(x.idx + 1));
    }
    j["xi"] = xi;
    Json roots = Json::array();
    auto add_roots = [&](const std::vector<Weight> &ws, const char *parity) {
        for (const auto &a : ws) {
            Json coords = Json::array();
            for (const auto &c : a.coords()) {
                coords.push_back(to_string(c));
            }
            roots.push_back({{"root", to_string(a)}, {"coords", coords}, {"parity", parity}});
        }
    };
    add_roots(rs.even(), "even");
    add_roots(rs.odd(), "odd");
    j["roots"] = roots;
    j["positive_even"] = to_json(rs.positive_even());
    j["positive_sharp"] = to_json(rs.positive_sharp());
    j["even_simple_roots"] = to_json(rs.even_simple_roots());
    j["odd"] = to_json(rs.odd());
    j["rho0"] = to_string(rs.rho0());
    auto g = weyl_groups(rs);
    Json groups;
    groups["W"] = g.full.order;
    groups["W_sharp"] = g.sharp.order;
    groups["W_2"] = g.second.order;
    j["group_orders"] = groups;
    Json pairs = Json::array();
    for (auto v : applicable_variants(rs)) {
        Json p;
        p["variant"] = to_string(v);
        p["pair"] = to_json(standard_pair(rs, v));
        pairs.push_back(p);
    }
    j["standard_pairs"] = pairs;
    return j;
}

/// Diagram of a pair, or null where the pair has no diagram (C(n), or an undrawable S).
inline Json diagram_json(const AdmissiblePair &p, const RootSystem &rs)
{
    if (rs.shape() == Shape::C || rs.shape() == Shape::Q) {
        return nullptr;
    }
    try {
        return to_string(from_pair(p, rs));
    } catch (const StructuralError &) {
        return nullptr;
    }
}

inline Json pairs_report(const RootSystem &rs, std::size_t cap = 100000)
{
    Json j = header("pairs");
    j["system"] = to_json(rs.type());
    auto pairs = enumerate_admissible_pairs(rs, cap);
    j["count"] = pairs.size();
    Json list = Json::array();
    for (const auto &p : pairs) {
        Json e = to_json(p);
        e["diagram"] = diagram_json(p, rs);
        list.push_back(e);
    }
    j["pairs"] = list;
    return j;
}

inline Json to_json(const ClassReport &r, const RootSystem &rs)
{
    Json j = header("diagram");
    j["system"] = to_json(rs.type());
    j["marking"] = to_string(rs.sharp_on_first_factor() ? MarkingMode::M : MarkingMode::N);
    j["pair_count"] = r.pair_count;
    j["simple_system_count"] = r.simple_system_count;
    j["classes"] = r.components;
    j["expected_classes"] = r.expected;
    j["lemma_components"] = r.lemma_components;
    Json c = Json::array();
    for (const auto &d : r.classes) {
        c.push_back(to_string(d));
    }
    j["canonical_forms"] = c;
    j["undrawable"] = r.undrawable;
    j["consistent"] = r.consistent;
    j["pi_determined_by_s"] = r.pi_determined_by_s;
    j["ok"] = r.ok();
    return j;
}

inline Json diagram_parse_report(const Diagram &d, const RootSystem &rs)
{
    Json j = header("diagram_parse");
    j["system"] = to_json(rs.type());
    j["input"] = to_string(d);
    auto c = canonical_form(d);
    j["canonical"] = to_string(c.diagram);
    Json word = Json::array();
    for (const auto &m : c.word) {
        word.push_back(to_string(m));
    }
    j["moves"] = word;
    auto p = reconstruct(d, rs);
    j["pair"] = to_json(p);
    return j;
}

inline Json to_json(const OrbitScan &s)
{
    Json j = header("orbits");
    j["system"] = to_json(s.system);
    j["height"] = s.height;
    j["candidates"] = s.candidates;
    j["found"] = to_json(s.found);
    j["expected"] = to_json(s.expected);
    j["ok"] = s.ok();
    return j;
}

inline Json to_json(const XiReport &r)
{
    Json j;
    j["n"] = r.n;
    j["solutions"] = r.solutions;
    j["unique"] = r.unique;
    j["perturbed_solutions"] = r.perturbed_solutions;
    j["perturbed_flagged"] = r.perturbed_flagged;
    j["ok"] = r.ok();
    return j;
}

/// Canonical serialization used everywhere: two-space indent, trailing newline.
inline std::string dump_json(const Json &j) { return j.dump(2) + "\n"; }

} // namespace superdenom
