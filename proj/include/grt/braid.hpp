#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "grt/linalg.hpp"
#include "grt/series.hpp"
#include "grt/word.hpp"

namespace grt {

// ---------------------------------------------------------------------------
// Presentation of H_n, n in {3,4,5}: symmetric generators e_ij (0<=i<j<=n-1),
// row sums sum_j e_ij = 0, and [e_ij, e_kl] = 0 for disjoint index pairs.
// ---------------------------------------------------------------------------

struct GeneratorPair {
    int i, j;  // i < j
    bool operator<(const GeneratorPair& o) const { return std::tie(i, j) < std::tie(o.i, o.j); }
    bool operator==(const GeneratorPair& o) const { return i == o.i && j == o.j; }
    std::string name() const { return "e" + std::to_string(i) + std::to_string(j); }
};

inline std::vector<GeneratorPair> generator_pairs(int n) {
    std::vector<GeneratorPair> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back({i, j});
    return out;
}

inline std::vector<std::pair<GeneratorPair, GeneratorPair>> disjoint_pairs(int n) {
    auto gens = generator_pairs(n);
    std::vector<std::pair<GeneratorPair, GeneratorPair>> out;
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = a + 1; b < gens.size(); ++b) {
            const auto& p = gens[a];
            const auto& q = gens[b];
            if (p.i != q.i && p.i != q.j && p.j != q.i && p.j != q.j) out.emplace_back(p, q);
        }
    return out;
}

struct BraidPresentation {
    int n;
    std::vector<GeneratorPair> generators;
    explicit BraidPresentation(int n_) : n(n_), generators(generator_pairs(n_)) {
        if (n < 3 || n > 5) throw domain_error("BraidPresentation supports n in {3,4,5}");
    }

    // row sums: for each point i, sum_j e_ij = 0 (0/1 coefficients over the
    // symmetric generators; symmetry and e_ii = 0 are baked into the
    // generator set)
    std::vector<std::vector<int>> row_sum_relations() const {
        std::vector<std::vector<int>> rows(n, std::vector<int>(generators.size(), 0));
        for (int i = 0; i < n; ++i)
            for (size_t c = 0; c < generators.size(); ++c)
                if (generators[c].i == i || generators[c].j == i) rows[i][c] = 1;
        return rows;
    }

    // [e_ij, e_kl] = 0 whenever {i,j} and {k,l} are disjoint
    std::vector<std::pair<GeneratorPair, GeneratorPair>> commutator_relations() const {
        return disjoint_pairs(n);
    }
};

// Result of the degree-1 Gaussian elimination on the n row-sum relations:
// every e_ij expressed over the chosen free generators.
struct DegreeOneSolution {
    int n = 0;
    int dimension = 0;
    std::vector<GeneratorPair> free_generators;
    // expressions[(i,j)] = coordinates over free_generators
    std::map<GeneratorPair, std::vector<Rational>> expressions;

    std::vector<Rational> expression_of(int i, int j) const {
        if (i == j) return std::vector<Rational>(free_generators.size(), Rational(0));
        GeneratorPair key{std::min(i, j), std::max(i, j)};
        return expressions.at(key);
    }
};

// Gaussian elimination over Q of the n row-sum relations among the C(n,2)
// symmetric generators. `preferred_free` lists generators the caller wants
// kept as the free ones (eliminated last).
inline DegreeOneSolution solve_degree_one(int n,
                                          std::vector<GeneratorPair> preferred_free = {}) {
    BraidPresentation pres(n);
    const auto& gens = pres.generators;
    int g = (int)gens.size();
    QMatrix rel(n, g);
    auto rows = pres.row_sum_relations();
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < g; ++c) rel(i, c) = rows[i][c];

    // eliminate preferred-free columns last
    std::vector<int> order;
    std::vector<bool> deferred(g, false);
    for (const auto& p : preferred_free)
        for (int c = 0; c < g; ++c)
            if (gens[c] == p) deferred[c] = true;
    for (int c = 0; c < g; ++c)
        if (!deferred[c]) order.push_back(c);
    for (int c = 0; c < g; ++c)
        if (deferred[c]) order.push_back(c);

    std::vector<int> pivots = rref(rel, order);
    std::vector<bool> is_pivot(g, false);
    for (int c : pivots) is_pivot[c] = true;

    DegreeOneSolution sol;
    sol.n = n;
    for (int c = 0; c < g; ++c)
        if (!is_pivot[c]) sol.free_generators.push_back(gens[c]);
    sol.dimension = (int)sol.free_generators.size();

    std::map<int, int> free_index;
    for (int c = 0, k = 0; c < g; ++c)
        if (!is_pivot[c]) free_index[c] = k++;

    for (int c = 0; c < g; ++c) {
        std::vector<Rational> expr(sol.dimension, Rational(0));
        if (!is_pivot[c]) {
            expr[free_index[c]] = 1;
        } else {
            int prow = -1;
            for (size_t r = 0; r < pivots.size(); ++r)
                if (pivots[r] == c) prow = (int)r;
            for (int c2 = 0; c2 < g; ++c2)
                if (!is_pivot[c2] && rel(prow, c2) != 0) expr[free_index[c2]] -= rel(prow, c2);
        }
        sol.expressions[gens[c]] = std::move(expr);
    }
    return sol;
}

// ---------------------------------------------------------------------------
// U(H_5) in the smash-product normal form U(H_4) (x) U(G_5):
//   H_4 factor freely generated by x := e03 (= e12 in H_4), y := e13 (= e02),
//   G_5 factor freely generated by a := e14, b := e24, c := e34,
// with e04 = -(a+b+c). PBW monomials are (word in {x,y}) * (word in {a,b,c})
// with all G_5 letters straightened to the right.
// ---------------------------------------------------------------------------

// monomial: h-part word over {x,y} (indices 0,1), g-part word over {a,b,c}
using BraidMonomial = std::pair<Word, Word>;

struct BraidMonomialLess {
    bool operator()(const BraidMonomial& m1, const BraidMonomial& m2) const {
        size_t d1 = m1.first.size() + m1.second.size();
        size_t d2 = m2.first.size() + m2.second.size();
        if (d1 != d2) return d1 < d2;
        if (m1.first.size() != m2.first.size()) return m1.first.size() > m2.first.size();
        if (m1.first != m2.first) return m1.first < m2.first;
        return m1.second < m2.second;
    }
};

inline int braid_monomial_degree(const BraidMonomial& m) {
    return (int)(m.first.size() + m.second.size());
}

class SmashBasis {
public:
    static constexpr int kFreeRank = 5;  // x, y, a, b, c

    explicit SmashBasis(int cap) : cap_(cap) {
        if (cap_ < 1) throw domain_error("cap must be >= 1");
        // the free generator choice, validated against the degree-1 solve
        std::vector<GeneratorPair> wanted{{0, 3}, {1, 3}, {1, 4}, {2, 4}, {3, 4}};
        deg1_ = solve_degree_one(5, wanted);
        if (deg1_.dimension != kFreeRank || !(deg1_.free_generators == wanted))
            throw domain_error("degree-1 solve did not produce the expected free generators");
    }

    static std::shared_ptr<const SmashBasis> get(int cap);

    int cap() const { return cap_; }
    const DegreeOneSolution& degree_one() const { return deg1_; }

    // commutator [h, g_letter] in U(G_5), quadratic with integer coefficients:
    //   [x,a] = [x,b] = [y,b] = 0
    //   [x,c] = [a,c] + [b,c],  [y,a] = [a,c],  [y,c] = -[a,c]
    static const std::vector<std::pair<Word, long>>& h_g_commutator(int h, int g) {
        static const std::vector<std::pair<Word, long>> zero{};
        static const std::vector<std::pair<Word, long>> ac_minus_ca{{Word{0, 2}, 1},
                                                                    {Word{2, 0}, -1}};
        static const std::vector<std::pair<Word, long>> ca_minus_ac{{Word{0, 2}, -1},
                                                                    {Word{2, 0}, 1}};
        static const std::vector<std::pair<Word, long>> xc{{Word{0, 2}, 1},
                                                           {Word{2, 0}, -1},
                                                           {Word{1, 2}, 1},
                                                           {Word{2, 1}, -1}};
        if (h == 0) return g == 2 ? xc : zero;
        // h == 1 (y)
        if (g == 0) return ac_minus_ca;
        if (g == 2) return ca_minus_ac;
        return zero;
    }

    // Normal form of (g-word) * (h-word): all h letters moved to the left.
    // Memoized; coefficients are integers but stored rational.
    const std::map<BraidMonomial, Rational, BraidMonomialLess>& straighten(const Word& gw,
                                                                           const Word& hw) const {
        std::lock_guard<std::mutex> lock(mu_);
        return straighten_locked(gw, hw);
    }

    std::vector<BraidMonomial> monomials_of_degree(int d) const {
        std::vector<BraidMonomial> out;
        for (int i = 0; i <= d; ++i) {
            for (const Word& hw : words_of_length(2, i))
                for (const Word& gw : words_of_length(3, d - i)) out.emplace_back(hw, gw);
        }
        std::sort(out.begin(), out.end(), BraidMonomialLess());
        return out;
    }

    static long dimension_formula(int d) {
        // sum_{i+j=d} 2^i 3^j
        long total = 0;
        for (int i = 0; i <= d; ++i) {
            long t = 1;
            for (int k = 0; k < i; ++k) t *= 2;
            for (int k = 0; k < d - i; ++k) t *= 3;
            total += t;
        }
        return total;
    }

    static std::vector<Word> words_of_length(int nletters, int len) {
        std::vector<Word> out;
        Word w(len, 0);
        if (len == 0) {
            out.push_back(w);
            return out;
        }
        while (true) {
            out.push_back(w);
            int i = len - 1;
            while (i >= 0 && w[i] == nletters - 1) {
                w[i] = 0;
                --i;
            }
            if (i < 0) break;
            w[i]++;
        }
        return out;
    }

    static std::string monomial_text(const BraidMonomial& m) {
        static const char* hname[2] = {"e03", "e13"};
        static const char* gname[3] = {"e14", "e24", "e34"};
        if (m.first.empty() && m.second.empty()) return "1";
        std::string s;
        for (uint8_t l : m.first) {
            if (!s.empty()) s += ".";
            s += hname[l];
        }
        for (uint8_t l : m.second) {
            if (!s.empty()) s += ".";
            s += gname[l];
        }
        return s;
    }

private:
    using NormalForm = std::map<BraidMonomial, Rational, BraidMonomialLess>;

    const NormalForm& straighten_locked(const Word& gw, const Word& hw) const {
        auto key = std::make_pair(gw, hw);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        NormalForm nf;
        if (gw.empty() || hw.empty()) {
            nf.emplace(BraidMonomial(hw, gw), Rational(1));
        } else {
            // G (h H') = h (G H') - sum_k (G with g_k -> [h, g_k]) H'
            int h = hw.front();
            Word hrest(hw.begin() + 1, hw.end());
            const NormalForm& tail = straighten_locked(gw, hrest);
            for (const auto& [mono, coef] : tail) {
                Word hh;
                hh.push_back((uint8_t)h);
                hh.insert(hh.end(), mono.first.begin(), mono.first.end());
                nf[BraidMonomial(std::move(hh), mono.second)] += coef;
            }
            for (size_t k = 0; k < gw.size(); ++k) {
                for (const auto& [quad, c] : h_g_commutator(h, gw[k])) {
                    Word repl;
                    repl.insert(repl.end(), gw.begin(), gw.begin() + k);
                    repl.insert(repl.end(), quad.begin(), quad.end());
                    repl.insert(repl.end(), gw.begin() + k + 1, gw.end());
                    const NormalForm& sub = straighten_locked(repl, hrest);
                    for (const auto& [mono, coef] : sub)
                        nf[mono] -= coef * Rational(c);
                }
            }
            for (auto it2 = nf.begin(); it2 != nf.end();) {
                if (it2->second == 0) it2 = nf.erase(it2);
                else ++it2;
            }
        }
        auto ins = memo_.emplace(std::move(key), std::move(nf));
        return ins.first->second;
    }

    int cap_;
    DegreeOneSolution deg1_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<Word, Word>, NormalForm> memo_;
};

using SmashBasisPtr = std::shared_ptr<const SmashBasis>;

inline SmashBasisPtr SmashBasis::get(int cap) {
    static std::mutex mu;
    static std::map<int, SmashBasisPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(cap);
    if (it != cache.end()) return it->second;
    auto ptr = std::make_shared<const SmashBasis>(cap);
    cache.emplace(cap, ptr);
    return ptr;
}

// Element of U(H_5) truncated at the basis cap, sparse on PBW monomials.
template <class R = Rational>
class BraidElement {
public:
    using Terms = std::map<BraidMonomial, R, BraidMonomialLess>;

    explicit BraidElement(SmashBasisPtr basis) : basis_(std::move(basis)) {}

    static BraidElement unit(const SmashBasisPtr& basis) {
        BraidElement e(basis);
        e.add_term({Word{}, Word{}}, ring::from_long<R>(1));
        return e;
    }

    const SmashBasisPtr& basis() const { return basis_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int cap() const { return basis_->cap(); }

    R coefficient(const BraidMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? R() : it->second;
    }

    void add_term(const BraidMonomial& m, const R& c) {
        if (braid_monomial_degree(m) > cap()) return;  // truncated
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!ring::is_zero(c)) terms_.emplace(m, c);
        } else {
            it->second += c;
            if (ring::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend BraidElement operator+(const BraidElement& a, const BraidElement& b) {
        a.require_same(b);
        BraidElement r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend BraidElement operator-(const BraidElement& a, const BraidElement& b) {
        a.require_same(b);
        BraidElement r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    BraidElement operator-() const {
        BraidElement r(basis_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    BraidElement scaled(const R& c) const {
        BraidElement r(basis_);
        if (ring::is_zero(c)) return r;
        for (const auto& [m, k] : terms_) r.add_term(m, k * c);
        return r;
    }
    BraidElement& operator+=(const BraidElement& o) { return *this = *this + o; }
    BraidElement& operator-=(const BraidElement& o) { return *this = *this - o; }
    friend bool operator==(const BraidElement& a, const BraidElement& b) {
        a.require_same(b);
        return (a - b).is_zero();
    }

    BraidElement graded_part(int d) const {
        BraidElement r(basis_);
        for (const auto& [m, c] : terms_)
            if (braid_monomial_degree(m) == d) r.terms_.emplace(m, c);
        return r;
    }
    int min_degree() const {
        int d = cap() + 1;
        for (const auto& [m, c] : terms_) d = std::min(d, braid_monomial_degree(m));
        return d;
    }

    void require_same(const BraidElement& o) const {
        if (basis_->cap() != o.basis_->cap())
            throw cap_mismatch_error("mixing braid caps");
    }

private:
    SmashBasisPtr basis_;
    Terms terms_;
};

// Product in U(H_5) in normal form: concatenate h-parts and g-parts around
// the straightened middle block.
template <class R>
BraidElement<R> smash_mul(const BraidElement<R>& a, const BraidElement<R>& b) {
    a.require_same(b);
    BraidElement<R> out(a.basis());
    int cap = a.cap();
    for (const auto& [m1, c1] : a.terms()) {
        int d1 = braid_monomial_degree(m1);
        for (const auto& [m2, c2] : b.terms()) {
            if (d1 + braid_monomial_degree(m2) > cap) continue;
            R c12 = c1 * c2;
            const auto& mid = a.basis()->straighten(m1.second, m2.first);
            for (const auto& [mono, coef] : mid) {
                Word hw = word_concat(m1.first, mono.first);
                Word gw = word_concat(mono.second, m2.second);
                out.add_term({std::move(hw), std::move(gw)}, c12 * ring::from_rational<R>(coef));
            }
        }
    }
    return out;
}

// Degree-1 normal form of e_ij (symmetrized, row-sum-reduced).
template <class R = Rational>
BraidElement<R> inject(int i, int j, const SmashBasisPtr& basis) {
    if (i < 0 || i > 4 || j < 0 || j > 4) throw domain_error("inject: index out of range");
    BraidElement<R> e(basis);
    if (i == j) return e;  // e_ii = 0
    std::vector<Rational> expr = basis->degree_one().expression_of(i, j);
    // free generator order: x, y | a, b, c
    static const BraidMonomial mono[5] = {
        {Word{0}, Word{}}, {Word{1}, Word{}}, {Word{}, Word{0}}, {Word{}, Word{1}},
        {Word{}, Word{2}},
    };
    for (int k = 0; k < 5; ++k)
        if (expr[k] != 0) e.add_term(mono[k], ring::from_rational<R>(expr[k]));
    return e;
}

template <class R>
BraidElement<R> braid_commutator(const BraidElement<R>& a, const BraidElement<R>& b) {
    return smash_mul(a, b) - smash_mul(b, a);
}

}  // namespace grt
