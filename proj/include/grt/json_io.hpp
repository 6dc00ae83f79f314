#pragma once

#include <json.hpp>

#include "grt/braid.hpp"
#include "grt/grtcheck.hpp"
#include "grt/logconn.hpp"
#include "grt/lyndon.hpp"
#include "grt/padic.hpp"
#include "grt/series.hpp"

namespace grt {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// scalars
// ---------------------------------------------------------------------------

inline Json to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw parse_error("rational must be encoded as a string");
    return parse_rational(j.get<std::string>());
}

inline Json to_json(const PadicScalar& x) {
    if (x.exact()) return Json{{"exact", to_string(x.exact_value())}};
    return Json{{"p", x.p()}, {"precision", x.precision()}, {"value", x.residue().get_str()}};
}

inline PadicScalar padic_from_json(const Json& j) {
    if (j.contains("exact")) return PadicScalar(parse_rational(j.at("exact").get<std::string>()));
    long p = j.at("p").get<long>();
    int prec = j.at("precision").get<int>();
    Integer v;
    if (v.set_str(j.at("value").get<std::string>(), 10) != 0)
        throw parse_error("bad p-adic residue value");
    return PadicScalar(p, prec, v);
}

inline Json to_json(const PadicStScalar& x) {
    Json arr = Json::array();
    for (const auto& c : x.coefficients()) arr.push_back(to_json(c));
    return arr;
}

// ---------------------------------------------------------------------------
// ring tags and series
// ---------------------------------------------------------------------------

struct RingTag {
    bool padic = false;
    long p = 0;
    int precision = 0;
};

inline Json to_json(const RingTag& r) {
    if (!r.padic) return Json{{"type", "rational"}};
    return Json{{"type", "padic"}, {"p", r.p}, {"precision", r.precision}};
}

inline RingTag ring_from_json(const Json& j) {
    RingTag r;
    std::string type = j.at("type").get<std::string>();
    if (type == "rational") return r;
    if (type == "padic") {
        r.padic = true;
        r.p = j.at("p").get<long>();
        r.precision = j.at("precision").get<int>();
        return r;
    }
    throw parse_error("unknown ring type: " + type);
}

namespace detail {
inline Json word_to_json(const Word& w, const Alphabet& alpha) {
    Json arr = Json::array();
    for (uint8_t l : w) arr.push_back(alpha.letter(l));
    return arr;
}
inline Word word_from_json(const Json& j, const Alphabet& alpha) {
    Word w;
    for (const auto& s : j) w.push_back((uint8_t)alpha.index_of(s.get<std::string>()));
    return w;
}
template <class R>
Json coeff_to_json(const R& c);
template <>
inline Json coeff_to_json<Rational>(const Rational& c) {
    return to_json(c);
}
template <>
inline Json coeff_to_json<PadicScalar>(const PadicScalar& c) {
    return to_json(c);
}
}  // namespace detail

template <class R>
Json to_json(const TruncatedSeries<R>& s, const RingTag& ring) {
    Json j;
    j["alphabet"] = Json::array();
    for (const auto& l : s.alphabet()->letters()) j["alphabet"].push_back(l);
    j["cap"] = s.cap();
    j["ring"] = to_json(ring);
    Json terms = Json::array();
    for (const auto& [w, c] : s.terms())  // canonical: length then lex
        terms.push_back(Json{{"word", detail::word_to_json(w, *s.alphabet())},
                             {"coeff", detail::coeff_to_json<R>(c)}});
    j["terms"] = std::move(terms);
    return j;
}

inline TruncatedSeries<Rational> rational_series_from_json(const Json& j) {
    std::vector<std::string> letters;
    for (const auto& l : j.at("alphabet")) letters.push_back(l.get<std::string>());
    AlphabetPtr alpha = make_alphabet(letters);
    TruncatedSeries<Rational> s(alpha, j.at("cap").get<int>());
    for (const auto& t : j.at("terms"))
        s.add_term(detail::word_from_json(t.at("word"), *alpha),
                   rational_from_json(t.at("coeff")));
    return s;
}

inline TruncatedSeries<PadicScalar> padic_series_from_json(const Json& j) {
    std::vector<std::string> letters;
    for (const auto& l : j.at("alphabet")) letters.push_back(l.get<std::string>());
    AlphabetPtr alpha = make_alphabet(letters);
    TruncatedSeries<PadicScalar> s(alpha, j.at("cap").get<int>());
    for (const auto& t : j.at("terms"))
        s.add_term(detail::word_from_json(t.at("word"), *alpha),
                   padic_from_json(t.at("coeff")));
    return s;
}

// ---------------------------------------------------------------------------
// Lie and braid elements
// ---------------------------------------------------------------------------

template <class R>
Json to_json(const LieElement<R>& a) {
    Json coords = Json::object();
    for (const auto& [i, c] : a.coords()) {
        const Word& w = a.basis()->entry(i).word;
        std::string key;
        for (uint8_t l : w) key += a.basis()->alphabet()->letter(l);
        coords[key] = detail::coeff_to_json<R>(c);
    }
    Json j;
    j["alphabet"] = Json::array();
    for (const auto& l : a.basis()->alphabet()->letters()) j["alphabet"].push_back(l);
    j["cap"] = a.basis()->cap();
    j["coords"] = std::move(coords);
    return j;
}

template <class R>
Json to_json(const BraidElement<R>& a) {
    Json terms = Json::object();
    for (const auto& [m, c] : a.terms())
        terms[SmashBasis::monomial_text(m)] = detail::coeff_to_json<R>(c);
    Json j;
    j["cap"] = a.cap();
    j["terms"] = std::move(terms);
    return j;
}

// ---------------------------------------------------------------------------
// connections
// ---------------------------------------------------------------------------

inline Json to_json(const LogConnection& c) {
    Json res = Json::array();
    for (const auto& g : c.residues()) {
        Json rows = Json::array();
        for (int i = 0; i < g.rows(); ++i) {
            Json row = Json::array();
            for (int k = 0; k < g.cols(); ++k) row.push_back(to_json(g(i, k)));
            rows.push_back(std::move(row));
        }
        res.push_back(std::move(rows));
    }
    Json flags = Json::array();
    for (auto f : c.flags())
        flags.push_back(f == ConnectionFlag::Unipotent ? "unipotent" : "integrable");
    Json j;
    j["rank"] = c.rank();
    j["vars"] = c.vars();
    j["residues"] = std::move(res);
    j["flags"] = std::move(flags);
    return j;
}

inline LogConnection connection_from_json(const Json& j) {
    int rank = j.at("rank").get<int>();
    std::vector<std::string> vars;
    for (const auto& v : j.at("vars")) vars.push_back(v.get<std::string>());
    std::vector<QMatrix> residues;
    for (const auto& rows : j.at("residues")) {
        QMatrix g(rank, rank);
        int i = 0;
        for (const auto& row : rows) {
            int k = 0;
            for (const auto& e : row) g(i, k++) = rational_from_json(e);
            ++i;
        }
        residues.push_back(std::move(g));
    }
    std::vector<ConnectionFlag> flags;
    if (j.contains("flags"))
        for (const auto& f : j.at("flags")) {
            std::string name = f.get<std::string>();
            if (name == "unipotent") flags.push_back(ConnectionFlag::Unipotent);
            else if (name == "integrable") flags.push_back(ConnectionFlag::IntegrableConstant);
            else throw parse_error("unknown connection flag: " + name);
        }
    return LogConnection(rank, std::move(vars), std::move(residues), std::move(flags));
}

// ---------------------------------------------------------------------------
// relation reports
// ---------------------------------------------------------------------------

template <class R>
Json to_json(const RelationReport<R>& rep, const RingTag& ring) {
    Json j;
    j["relation"] = rep.relation;
    j["cap"] = rep.cap;
    if (rep.pass()) {
        j["status"] = "pass";
    } else {
        Json st;
        st["first_defect_degree"] = *rep.first_defect_degree;
        if (rep.defect_series)
            st["defect"] = to_json(*rep.defect_series, ring);
        else if (rep.defect_braid)
            st["defect"] = to_json(*rep.defect_braid);
        j["status"] = std::move(st);
    }
    return j;
}

inline Json conventions_json() {
    return Json{{"two_cycle", kTwoCycleForm},
                {"three_cycle", kThreeCycleForm},
                {"pentagon", kPentagonForm}};
}

template <class R>
Json to_json(const FullReport<R>& rep, const RingTag& ring) {
    Json j;
    j["conventions"] = conventions_json();
    j["ring"] = to_json(ring);
    j["group_like"] = rep.group_like.pass;
    j["degree_one_vanishes"] = rep.degree_one_vanishes;
    Json rels = Json::array();
    for (const auto& r : rep.relations) rels.push_back(to_json(r, ring));
    j["relations"] = std::move(rels);
    j["pass"] = rep.pass();
    return j;
}

}  // namespace grt
