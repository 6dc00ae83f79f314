#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grt/braid.hpp"
#include "grt/linalg.hpp"
#include "grt/lyndon.hpp"
#include "grt/series.hpp"

namespace grt {

// The relation conventions implemented here, quoted in every report so the
// results are self-describing:
//   2-cycle :  phi(Y,X) * phi(X,Y) = 1
//   3-cycle :  phi(Z,X) * phi(Y,Z) * phi(X,Y) = 1   with Z = -X-Y
//   pentagon:  phi(e23,e34) phi(e40,e01) phi(e12,e23) phi(e34,e40) phi(e01,e12) = 1
inline const char* kTwoCycleForm = "phi(Y,X)*phi(X,Y)=1";
inline const char* kThreeCycleForm = "phi(Z,X)*phi(Y,Z)*phi(X,Y)=1, Z=-X-Y";
inline const char* kPentagonForm =
    "phi(e23,e34)*phi(e40,e01)*phi(e12,e23)*phi(e34,e40)*phi(e01,e12)=1";

template <class R = Rational>
struct RelationReport {
    std::string relation;
    int cap = 0;
    // defect_by_degree[d] is true when the degree-d part of LHS-1 is nonzero
    std::vector<bool> defect_by_degree;
    std::optional<int> first_defect_degree;
    // first nonzero defect, as series terms or braid terms
    std::optional<TruncatedSeries<R>> defect_series;
    std::optional<BraidElement<R>> defect_braid;
    bool pass() const { return !first_defect_degree.has_value(); }
};

namespace detail {
template <class R>
RelationReport<R> series_defect_report(const std::string& name,
                                       const TruncatedSeries<R>& lhs) {
    RelationReport<R> rep;
    rep.relation = name;
    rep.cap = lhs.cap();
    TruncatedSeries<R> defect = lhs - TruncatedSeries<R>::unit(lhs.alphabet(), lhs.cap());
    rep.defect_by_degree.assign(lhs.cap() + 1, false);
    for (const auto& [w, c] : defect.terms()) rep.defect_by_degree[w.size()] = true;
    for (int d = 0; d <= lhs.cap(); ++d) {
        if (rep.defect_by_degree[d]) {
            rep.first_defect_degree = d;
            rep.defect_series = defect.graded_part(d);
            break;
        }
    }
    return rep;
}
template <class R>
RelationReport<R> braid_defect_report(const std::string& name, const BraidElement<R>& lhs) {
    RelationReport<R> rep;
    rep.relation = name;
    rep.cap = lhs.cap();
    BraidElement<R> defect = lhs - BraidElement<R>::unit(lhs.basis());
    rep.defect_by_degree.assign(lhs.cap() + 1, false);
    for (const auto& [m, c] : defect.terms()) rep.defect_by_degree[braid_monomial_degree(m)] = true;
    for (int d = 0; d <= lhs.cap(); ++d) {
        if (rep.defect_by_degree[d]) {
            rep.first_defect_degree = d;
            rep.defect_braid = defect.graded_part(d);
            break;
        }
    }
    return rep;
}
}  // namespace detail

template <class R>
void require_two_letters(const TruncatedSeries<R>& phi) {
    if (phi.alphabet()->size() != 2)
        throw domain_error("associator candidates live over a 2-letter alphabet");
}

// phi(arg0, arg1) where the arguments are series over the same alphabet.
template <class R>
TruncatedSeries<R> associator_substitute(const TruncatedSeries<R>& phi,
                                         const TruncatedSeries<R>& arg0,
                                         const TruncatedSeries<R>& arg1) {
    return substitute(phi, std::vector<TruncatedSeries<R>>{arg0, arg1});
}

template <class R>
RelationReport<R> check_two_cycle(const TruncatedSeries<R>& phi) {
    require_two_letters(phi);
    auto X = TruncatedSeries<R>::letter(phi.alphabet(), phi.cap(), 0);
    auto Y = TruncatedSeries<R>::letter(phi.alphabet(), phi.cap(), 1);
    TruncatedSeries<R> lhs = associator_substitute(phi, Y, X) * phi;
    return detail::series_defect_report<R>("two_cycle", lhs);
}

template <class R>
RelationReport<R> check_three_cycle(const TruncatedSeries<R>& phi) {
    require_two_letters(phi);
    auto X = TruncatedSeries<R>::letter(phi.alphabet(), phi.cap(), 0);
    auto Y = TruncatedSeries<R>::letter(phi.alphabet(), phi.cap(), 1);
    TruncatedSeries<R> Z = -X - Y;
    TruncatedSeries<R> lhs = associator_substitute(phi, Z, X) *
                             associator_substitute(phi, Y, Z) * phi;
    return detail::series_defect_report<R>("three_cycle", lhs);
}

// Evaluate a 2-letter series at two braid-algebra arguments (the unique
// multiplicative extension, with memoized prefix products).
template <class R>
BraidElement<R> braid_evaluate(const TruncatedSeries<R>& s, const BraidElement<R>& ex,
                               const BraidElement<R>& ey) {
    require_two_letters(s);
    ex.require_same(ey);
    std::map<Word, BraidElement<R>, WordLess> memo;
    memo.emplace(Word{}, BraidElement<R>::unit(ex.basis()));
    BraidElement<R> out(ex.basis());
    for (const auto& [w, c] : s.terms()) {
        const BraidElement<R>* cur = &memo.at(Word{});
        Word pre;
        for (uint8_t l : w) {
            pre.push_back(l);
            auto it = memo.find(pre);
            if (it == memo.end())
                it = memo.emplace(pre, smash_mul(*cur, l == 0 ? ex : ey)).first;
            cur = &it->second;
        }
        out += cur->scaled(c);
    }
    return out;
}

inline const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>&
pentagon_argument_pairs() {
    // factor order and index conventions verbatim, indices mod 5
    static const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> args{
        {{2, 3}, {3, 4}}, {{4, 0}, {0, 1}}, {{1, 2}, {2, 3}}, {{3, 4}, {4, 0}}, {{0, 1}, {1, 2}},
    };
    return args;
}

template <class R>
RelationReport<R> check_pentagon(const TruncatedSeries<R>& phi) {
    require_two_letters(phi);
    SmashBasisPtr basis = SmashBasis::get(phi.cap());
    BraidElement<R> lhs = BraidElement<R>::unit(basis);
    for (const auto& [p, q] : pentagon_argument_pairs()) {
        BraidElement<R> factor = braid_evaluate(phi, inject<R>(p.first, p.second, basis),
                                                inject<R>(q.first, q.second, basis));
        lhs = smash_mul(lhs, factor);
    }
    return detail::braid_defect_report<R>("pentagon", lhs);
}

enum class Relation { TwoCycle, ThreeCycle, Pentagon };

template <class R = Rational>
struct FullReport {
    ShuffleReport group_like;
    bool degree_one_vanishes = true;
    std::vector<RelationReport<R>> relations;
    bool pass() const {
        for (const auto& r : relations)
            if (!r.pass()) return false;
        return true;
    }
};

template <class R>
FullReport<R> full_report(const TruncatedSeries<R>& phi, const std::vector<Relation>& which) {
    require_two_letters(phi);
    FullReport<R> rep;
    rep.group_like = is_group_like(phi);
    rep.degree_one_vanishes = phi.graded_part(1).is_zero();
    for (Relation rel : which) {
        switch (rel) {
            case Relation::TwoCycle: rep.relations.push_back(check_two_cycle(phi)); break;
            case Relation::ThreeCycle: rep.relations.push_back(check_three_cycle(phi)); break;
            case Relation::Pentagon: rep.relations.push_back(check_pentagon(phi)); break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Linearized solver: graded dimensions of the Lie algebra cut out by
//   psi(Y,X) + psi(X,Y) = 0
//   psi(Z,X) + psi(Y,Z) + psi(X,Y) = 0,  Z = -X-Y
//   sum of the five pentagon substitutions = 0 in U(H_5)
// over homogeneous Lie elements of degree d. Exact rational nullspace,
// cross-checked at a second column elimination order.
// ---------------------------------------------------------------------------

struct GrtDimensionResult {
    int degree = 0;
    int dimension = 0;
    std::vector<LieElement<Rational>> basis;
};

inline GrtDimensionResult grt1_graded_dimension(int d) {
    if (d < 2)
        throw domain_error(
            "grt1_graded_dimension needs d >= 2: psi = a(X-Y) satisfies every linearized "
            "relation at degree 1 yet exp(a(X-Y)) fails the 3-cycle at degree 2");
    AlphabetPtr alpha = make_alphabet({"X", "Y"});
    LyndonBasisPtr lyndon = LyndonBasis::get(alpha, d);
    auto [first, last] = lyndon->degree_range(d);
    int ncols = last - first;

    std::vector<TruncatedSeries<Rational>> expansions;
    for (int i = first; i < last; ++i) expansions.push_back(lyndon->expansion<Rational>(i));

    auto X = TruncatedSeries<Rational>::letter(alpha, d, 0);
    auto Y = TruncatedSeries<Rational>::letter(alpha, d, 1);
    TruncatedSeries<Rational> Z = -X - Y;

    // column index for degree-d words
    std::vector<Word> words;
    for (const Word& w : enumerate_words(*alpha, d))
        if ((int)w.size() == d) words.push_back(w);
    std::map<Word, int, WordLess> word_index;
    for (size_t i = 0; i < words.size(); ++i) word_index[words[i]] = (int)i;

    SmashBasisPtr smash = SmashBasis::get(d);
    std::vector<BraidMonomial> monos = smash->monomials_of_degree(d);
    std::map<BraidMonomial, int, BraidMonomialLess> mono_index;
    for (size_t i = 0; i < monos.size(); ++i) mono_index[monos[i]] = (int)i;

    int nrows = 2 * (int)words.size() + (int)monos.size();
    QMatrix m(nrows, ncols);

    for (int col = 0; col < ncols; ++col) {
        const TruncatedSeries<Rational>& s = expansions[col];
        // 2-cycle block
        TruncatedSeries<Rational> r2 = associator_substitute(s, Y, X) + s;
        for (const auto& [w, c] : r2.terms()) m(word_index.at(w), col) = c;
        // 3-cycle block
        TruncatedSeries<Rational> r3 =
            associator_substitute(s, Z, X) + associator_substitute(s, Y, Z) + s;
        for (const auto& [w, c] : r3.terms())
            m((int)words.size() + word_index.at(w), col) = c;
        // linearized pentagon block
        BraidElement<Rational> r5(smash);
        for (const auto& [p, q] : pentagon_argument_pairs())
            r5 += braid_evaluate(s, inject<Rational>(p.first, p.second, smash),
                                 inject<Rational>(q.first, q.second, smash));
        for (const auto& [mono, c] : r5.terms())
            m(2 * (int)words.size() + mono_index.at(mono), col) = c;
    }

    std::vector<int> natural(ncols), reversed(ncols);
    std::iota(natural.begin(), natural.end(), 0);
    for (int i = 0; i < ncols; ++i) reversed[i] = ncols - 1 - i;
    auto ns1 = nullspace(m, natural);
    auto ns2 = nullspace(m, reversed);
    if (ns1.size() != ns2.size())
        throw domain_error("grt1_graded_dimension: elimination orders disagree");

    GrtDimensionResult res;
    res.degree = d;
    res.dimension = (int)ns1.size();
    for (const auto& v : ns1) {
        LieElement<Rational> psi(lyndon);
        for (int i = 0; i < ncols; ++i)
            if (v[i] != 0) psi.add(first + i, v[i]);
        res.basis.push_back(std::move(psi));
    }
    return res;
}

}  // namespace grt
