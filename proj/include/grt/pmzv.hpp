#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "grt/padic.hpp"
#include "grt/series.hpp"

namespace grt {

// ---------------------------------------------------------------------------
// Exact rational power series on the disk at 0 (dense, truncated at nterms).
// ---------------------------------------------------------------------------

struct PolySeries {
    std::vector<Rational> c;  // c[n] multiplies z^n

    PolySeries() = default;
    explicit PolySeries(int nterms) : c(nterms, Rational(0)) {}

    int nterms() const { return (int)c.size(); }
    const Rational& operator[](int n) const { return c.at(n); }
    Rational& operator[](int n) { return c.at(n); }

    friend PolySeries operator+(const PolySeries& a, const PolySeries& b) {
        if (a.nterms() != b.nterms())
            throw cap_mismatch_error("mixing series term counts");
        PolySeries r(a.nterms());
        for (int i = 0; i < r.nterms(); ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend PolySeries operator-(const PolySeries& a, const PolySeries& b) {
        if (a.nterms() != b.nterms())
            throw cap_mismatch_error("mixing series term counts");
        PolySeries r(a.nterms());
        for (int i = 0; i < r.nterms(); ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend PolySeries operator*(const PolySeries& a, const PolySeries& b) {
        // truncate to the shorter reliable window
        int n = std::min(a.nterms(), b.nterms());
        PolySeries r(n);
        for (int i = 0; i < n; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; i + j < n; ++j) r.c[i + j] += a.c[i] * b.c[j];
        }
        return r;
    }
    PolySeries scaled(const Rational& k) const {
        PolySeries r = *this;
        for (auto& x : r.c) x *= k;
        return r;
    }
    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }

    // antiderivative of f dz vanishing at 0
    PolySeries integrate() const {
        PolySeries r(nterms());
        for (int n = 0; n + 1 < nterms(); ++n)
            if (c[n] != 0) r.c[n + 1] = c[n] / Rational(n + 1);
        return r;
    }
    // antiderivative of f dz/z; needs f(0) = 0
    PolySeries integrate_dlog0() const {
        if (nterms() && c[0] != 0) throw domain_error("dlog z integrand must vanish at 0");
        PolySeries r(nterms());
        for (int n = 1; n < nterms(); ++n)
            if (c[n] != 0) r.c[n] = c[n] / Rational(n);
        return r;
    }
    // antiderivative of f dz/(z-1) vanishing at 0: f/(z-1) = -f * sum z^k
    PolySeries integrate_dlog1() const {
        PolySeries r(nterms());
        Rational partial = 0;
        for (int n = 0; n + 1 < nterms(); ++n) {
            partial += c[n];  // coefficient of z^n in f * sum z^k
            r.c[n + 1] = -partial / Rational(n + 1);
        }
        return r;
    }
    // f(z) |-> f(z^p)
    PolySeries compose_zp(long p) const {
        PolySeries r(nterms());
        for (int n = 0; n * p < (long)nterms(); ++n) r.c[n * p] = c[n];
        return r;
    }
    // d/dz
    PolySeries derivative() const {
        PolySeries r(nterms());
        for (int n = 1; n < nterms(); ++n) r.c[n - 1] = c[n] * Rational(n);
        return r;
    }
};

// ---------------------------------------------------------------------------
// Integration words and Coleman expansions
// ---------------------------------------------------------------------------

// Sequence over {0,1} in integration order (innermost first); letter i
// corresponds to omega_i = dlog(z - i).
using IntegrationWord = std::vector<int>;

inline bool admissible(const IntegrationWord& w) { return !w.empty() && w.front() == 1; }

inline std::string integration_word_text(const IntegrationWord& w) {
    std::string s = "(";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s + ")";
}

// Finite sum f_0(z) + f_1(z) log(z-c) + ... around center c in {0,1}; the
// f_k are truncated power series in (z - c).
struct ColemanExpansion {
    int center = 0;
    std::vector<PolySeries> logpart;  // logpart[k] multiplies log^k(z-center)
    int weight = 0;
    int nterms = 0;

    const PolySeries& f(int k) const {
        static const PolySeries empty;
        return k < (int)logpart.size() ? logpart[k] : empty;
    }
};

// Taylor coefficients at 0 of the iterated integral I_w for admissible w
// (pure power series vanishing at 0); nterms coefficients kept.
inline PolySeries polylog_taylor(const IntegrationWord& w, int nterms) {
    if (nterms < 1) throw domain_error("polylog_taylor needs nterms >= 1");
    if (w.empty()) {
        PolySeries one(nterms);
        one.c[0] = 1;
        return one;
    }
    if (!admissible(w))
        throw domain_error("word " + integration_word_text(w) +
                           " starts with omega_0: regularization required");
    PolySeries cur(nterms);
    cur.c[0] = 1;
    for (size_t step = 0; step < w.size(); ++step) {
        cur = (w[step] == 1) ? cur.integrate_dlog1() : cur.integrate_dlog0();
    }
    return cur;
}

// Coleman expansion of I_w at the 0-center (pure series for admissible w).
inline ColemanExpansion polylog_expansion_at0(const IntegrationWord& w, int nterms) {
    ColemanExpansion e;
    e.center = 0;
    e.weight = (int)w.size();
    e.nterms = nterms;
    e.logpart.push_back(polylog_taylor(w, nterms));
    return e;
}

// Expansion at the 1-center for the weight-1 integrals, in powers of
// u = z - 1 and log(z - 1): I_(1) = log(1-z) = log(z-1) on the Iwasawa
// branch (log(-1) = 0); I_(0) = log z = log(1+u) with regularized constant 0.
inline ColemanExpansion polylog_expansion_at1(const IntegrationWord& w, int nterms) {
    if (w.size() != 1)
        throw domain_error("1-center expansions are materialized for weight 1 only; higher "
                           "weights go through the regularized-value engine");
    ColemanExpansion e;
    e.center = 1;
    e.weight = 1;
    e.nterms = nterms;
    if (w[0] == 1) {
        e.logpart.emplace_back(nterms);  // f_0 = 0
        PolySeries one(nterms);
        one.c[0] = 1;
        e.logpart.push_back(one);  // f_1 = 1
    } else {
        // log(1+u) = sum (-1)^(n+1) u^n / n
        PolySeries f0(nterms);
        for (int n = 1; n < nterms; ++n) f0.c[n] = Rational((n % 2) ? 1 : -1) / Rational(n);
        e.logpart.push_back(f0);
    }
    return e;
}

// ---------------------------------------------------------------------------
// Frobenius functional equations
//   D_w(z) := I_w(z^p) - p^|w| I_w(z)
// satisfies D_empty = 0 and, stripping the outer letter w = w'.(i_r),
//   dD_w = p omega_{i_r} D_{w'}                      (i_r = 0)
//   dD_w = p omega_1 D_{w'} + eta (D_{w'} + p^{|w|-1} I_{w'})   (i_r = 1)
// with eta = dlog((z^p-1)/(z-1)^p); all integrals vanish at 0.
// ---------------------------------------------------------------------------

struct FrobeniusRelation {
    IntegrationWord word;
    long p = 0;
    int weight = 0;
    int nterms = 0;
    PolySeries correction;  // D_w as an exact series at 0
    std::string derivation;
};

namespace detail {
// eta = dlog Phi as a coefficient series: eta = (sum_{p∤n} p z^(n-1)) dz
inline PolySeries eta_series(long p, int nterms) {
    PolySeries r(nterms);
    for (int k = 0; k < nterms; ++k)
        if ((k + 1) % p != 0) r.c[k] = Rational(p);
    return r;
}
}  // namespace detail

inline FrobeniusRelation frobenius_functional_equation(const IntegrationWord& w, long p,
                                                       int nterms = 256, int weight_cap = 3) {
    if ((int)w.size() > weight_cap)
        throw domain_error("functional equation beyond the implemented weight cap");
    if (!w.empty() && !admissible(w) && !(w.size() == 1 && w[0] == 0))
        throw domain_error("functional equation needs an admissible word or (0)");
    FrobeniusRelation rel;
    rel.word = w;
    rel.p = p;
    rel.weight = (int)w.size();
    rel.nterms = nterms;
    if (w.empty() || (w.size() == 1 && w[0] == 0)) {
        // I_(0) = log z transforms exactly: log z^p = p log z
        rel.correction = PolySeries(nterms);
        rel.derivation = "log(z^p) = p log(z); zero correction";
        return rel;
    }
    PolySeries eta = detail::eta_series(p, nterms);
    PolySeries d(nterms);  // D of the current prefix
    Rational ppow = 1;     // p^(|prefix|-1) while integrating the prefix
    std::string steps;
    for (size_t k = 0; k < w.size(); ++k) {
        IntegrationWord prefix(w.begin(), w.begin() + k);
        PolySeries iw_prefix =
            prefix.empty() ? polylog_taylor({}, nterms) : polylog_taylor(prefix, nterms);
        if (w[k] == 0) {
            d = d.scaled(Rational(p)).integrate_dlog0();
            steps += "o0 ";
        } else {
            PolySeries part1 = d.scaled(Rational(p)).integrate_dlog1();
            PolySeries part2 = (eta * (d + iw_prefix.scaled(ppow))).integrate();
            d = part1 + part2;
            steps += "o1 ";
        }
        ppow *= p;
    }
    rel.correction = d;
    rel.derivation =
        "differentiate I_w(z^p) - p^|w| I_w(z) letterwise (pullbacks: omega_0 -> p omega_0, "
        "omega_1 -> p omega_1 + eta), integrate from 0; steps: " + steps;
    return rel;
}

// ---------------------------------------------------------------------------
// Regularized values at t_10 and the Frobenius series g
// ---------------------------------------------------------------------------

class PmzvEngine {
public:
    PmzvEngine(long p, int wmax, int precision, int guard = 8)
        : p_(p), wmax_(wmax), target_prec_(precision), work_prec_(precision + guard) {
        if (p < 3) throw domain_error("pmzv refuses p = 2 (disk geometry degenerates)");
        if (!is_prime(p)) throw domain_error("p must be prime");
        if (wmax < 1 || wmax > 3)
            throw domain_error(
                "weight cap is 3: higher weight needs the level-2 regularized algebra");
        if (precision < 1) throw domain_error("precision must be positive");
        compute_li_at_minus_one();
    }

    long p() const { return p_; }
    int weight_cap() const { return wmax_; }
    int working_precision() const { return work_prec_; }

    // Li_k(-1), k = 1..3 (V_1 = -log 2)
    const PadicScalar& li_minus_one(int k) const { return V_.at(k); }

    // regularized value of I_w at the tangential basepoint t_10, branch
    // l(p) = 0; any word over {0,1} of weight <= wmax
    PadicScalar regularized_value(const IntegrationWord& w) {
        if ((int)w.size() > wmax_)
            throw domain_error("regularized_value: weight beyond the cap");
        auto it = value_cache_.find(w);
        if (it != value_cache_.end()) return it->second;
        PadicScalar v = compute_value(w);
        value_cache_.emplace(w, v);
        return v;
    }

    // group-like h with h[e_(i_r)...e_(i_1)] = regularized value of
    // (i_1,...,i_r); normalization h[e0] = h[e1] = 0
    TruncatedSeries<PadicScalar> regularized_h() {
        AlphabetPtr alpha = make_alphabet({"e0", "e1"});
        TruncatedSeries<PadicScalar> h(alpha, wmax_);
        h.add_term(Word{}, PadicScalar(1L));
        for (const Word& cw : enumerate_words(*alpha, wmax_)) {
            if (cw.empty()) continue;
            IntegrationWord iw(cw.rbegin(), cw.rend());
            h.add_term(cw, regularized_value(iw));
        }
        auto rep = is_group_like(h);
        if (!rep.pass)
            throw domain_error("internal: regularized h is not group-like (" + rep.reason + ")");
        return h;
    }

    // solve h = g F0(h), F0(e0) = p e0, F0(e1) = g^{-1} (p e1) g, by weight
    // induction (the conjugation only contributes at strictly higher weight)
    TruncatedSeries<PadicScalar> compute_g() {
        using PS = TruncatedSeries<PadicScalar>;
        PS h = regularized_h();
        AlphabetPtr alpha = h.alphabet();
        PS g = PS::unit(alpha, wmax_);
        for (int iter = 0; iter <= wmax_ + 1; ++iter) {
            PS f0h = apply_frobenius(h, g);
            PS gnext = h * mul_inverse(f0h);
            if (gnext == g) break;
            g = gnext;
        }
        // fixed point reached; consistency is a hard invariant
        if (!(h == g * apply_frobenius(h, g)))
            throw domain_error("internal: Frobenius fixed point did not converge");
        auto rep = is_group_like(g);
        if (!rep.pass) throw domain_error("internal: g is not group-like");
        if (!g.graded_part(1).is_zero())
            throw domain_error("internal: g has a nonzero weight-1 part");
        return g;
    }

    // F0 with the given g: the ring endomorphism e0 -> p e0, e1 -> g^-1 (p e1) g
    TruncatedSeries<PadicScalar> apply_frobenius(const TruncatedSeries<PadicScalar>& s,
                                                 const TruncatedSeries<PadicScalar>& g) {
        using PS = TruncatedSeries<PadicScalar>;
        AlphabetPtr alpha = s.alphabet();
        PS e0 = PS::letter(alpha, s.cap(), 0), e1 = PS::letter(alpha, s.cap(), 1);
        PS img0 = e0.scaled(PadicScalar((long)p_));
        PS img1 = (mul_inverse(g) * e1 * g).scaled(PadicScalar((long)p_));
        return substitute(s, std::vector<PS>{img0, img1});
    }

    static bool is_prime(long n) {
        if (n < 2) return false;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    PadicScalar from_q(const Rational& q) const {
        return PadicScalar::from_rational(p_, work_prec_, q);
    }

    // ---- Li_k(-1) by the mu_p-distribution at the Frobenius-fixed point -1:
    // Li_k(z^p) = p^(k-1) sum_{zeta^p=1} Li_k(zeta z); at z = -1 the points
    // -zeta all lie in the residue disk of -1, where Li_k is plain analytic.
    // With pi_j = sum_{zeta != 1} (1-zeta)^j (integer power sums) this pins
    //   V_k (1 - p^k) = p^(k-1) sum_{j>=1} c_{k,j} pi_j
    // where Li_k(-1+s) = V_k + sum_{j>=1} c_{k,j} s^j locally.
    //
    // The c_{k,j} pick up denominators divisible by p (1/j terms), so the
    // whole expansion is carried scaled by a fixed power p^E large enough to
    // keep every coefficient p-integral; only the final sums are descaled.
    void compute_li_at_minus_one() {
        int J = (int)(p_ - 1) * (work_prec_ + 20);
        int logJ = 0;
        for (long q = 1; q <= J; q *= p_) ++logJ;
        int E = 3 * (logJ + 1);  // covers up to three nested 1/n divisions
        int prec = work_prec_ + E + 4;
        Integer pE = pow_ui(Integer(p_), E);

        std::vector<Integer> pi = power_sums_one_minus_zeta(J);

        // scaled expansion p^E * Li_1(-1+s), Li_1(-1+s) = -log(2-s)
        std::vector<PadicScalar> cur(J + 1);
        PadicScalar log2 = specialize_lp(
            iwasawa_log(PadicScalar(p_, prec, Integer(2))), PadicScalar());
        cur[0] = -log2 * PadicScalar(Rational(pE));
        for (int j = 1; j <= J; ++j) {
            Rational twoj = pow_ui(Integer(2), j);
            cur[j] = PadicScalar::from_rational(p_, prec, Rational(pE) / (Rational(j) * twoj));
        }
        V_[1] = -log2;
        verify_trace_identity(1, cur, pi);

        for (int k = 2; k <= std::max(wmax_, 2); ++k) {
            // p^E Li_k(-1+s) = p^E V_k + int_0^s p^E Li_{k-1}(-1+u) du/(u-1),
            // 1/(u-1) = -(1 + u + u^2 + ...)
            std::vector<PadicScalar> next(J + 1);
            PadicScalar partial;  // scaled coefficient of u^n in Li_{k-1} * sum u^m
            for (int n = 0; n < J; ++n) {
                partial += cur[n];
                next[n + 1] = -partial / PadicScalar((long)(n + 1));
            }
            PadicScalar sum;  // = p^E sum_j c_{k,j} pi_j
            for (int j = 1; j <= J; ++j) {
                if (pi[j] == 0) continue;
                sum += next[j] * PadicScalar(Rational(pi[j]));
            }
            tail_check(next, pi, J, E);
            // V_k (1 - p^k) = p^(k-1) sum_j c_{k,j} pi_j
            Rational pk1 = 1;
            for (int i = 0; i < k - 1; ++i) pk1 *= p_;
            Rational pk = pk1 * p_;
            PadicScalar vk = sum * PadicScalar(pk1 / (Rational(1) - pk)) /
                             PadicScalar(p_, sum.precision() + E, pE);
            // the scalar tracker cannot see the series-truncation error, so
            // cap the claim at the precision the tail bound certifies
            if (vk.precision() > work_prec_ + (int)vk.valuation())
                vk = vk.truncated(work_prec_ + (int)vk.valuation());
            next[0] = vk * PadicScalar(Rational(pE));
            V_[k] = vk;
            cur = std::move(next);
        }
        // dual-route agreement at weight 2: the mu_2 distribution gives
        // Li_2-reg(1) = -2 Li_2(-1) while the inversion z -> 1/z gives
        // Li_2-reg(1) = Li_2(-1); consistency forces Li_2(-1) = 0
        if (!V_.at(2).truncated(target_prec_).is_zero())
            throw domain_error(
                "internal: distribution and inversion routes disagree (Li_2(-1) != 0)");
    }

    // power sums pi_j = sum_{zeta^p = 1, zeta != 1} (1 - zeta)^j, exact
    // integers from P(x) = prod (x - (1-zeta)) = sum_{i<p} (1-x)^i
    std::vector<Integer> power_sums_one_minus_zeta(int J) const {
        int deg = (int)p_ - 1;
        // coefficients of P(x), ascending
        std::vector<Integer> P(deg + 1, Integer(0));
        {
            // sum_{i=0}^{p-1} (1-x)^i, binomial expansion
            std::vector<Integer> binom(deg + 1, Integer(0));
            for (long i = 0; i < p_; ++i) {
                // (1-x)^i
                Integer b = 1;
                for (int j = 0; j <= (int)i; ++j) {
                    P[j] += (j % 2 == 0 ? b : -b);
                    b = b * (Integer((long)i - j)) / Integer(j + 1);
                }
            }
        }
        // Newton from e-coefficients: monic? leading coeff of P is (-1)^(p-1) = 1
        // a_i := coefficient of x^(deg - i)
        std::vector<Integer> a(deg + 1);
        for (int i = 0; i <= deg; ++i) a[i] = P[deg - i];
        if (a[0] != 1) throw domain_error("internal: P not monic");
        std::vector<Integer> ps(J + 1, Integer(0));  // ps[j] = pi_j
        for (int j = 1; j <= J; ++j) {
            Integer acc = 0;
            for (int i = 1; i < j && i <= deg; ++i) acc += a[i] * ps[j - i];
            if (j <= deg)
                ps[j] = -acc - Integer(j) * a[j];
            else
                ps[j] = -acc;
        }
        return ps;
    }

    // check V_k (1 - p^k) = p^(k-1) sum_j c_{k,j} pi_j against a known V_k,
    // everything scaled by p^E (coeffs[0] = p^E V_k)
    void verify_trace_identity(int k, const std::vector<PadicScalar>& coeffs,
                               const std::vector<Integer>& pi) const {
        PadicScalar sum;
        for (size_t j = 1; j < coeffs.size(); ++j) {
            if (pi[j] == 0) continue;
            sum += coeffs[j] * PadicScalar(Rational(pi[j]));
        }
        Rational pk1 = 1;
        for (int i = 0; i < k - 1; ++i) pk1 *= p_;
        PadicScalar lhs = coeffs[0] * PadicScalar(Rational(1) - pk1 * p_);
        PadicScalar rhs = sum * PadicScalar(pk1);
        if (!((lhs - rhs).truncated(std::min(lhs.precision(), work_prec_)).is_zero()))
            throw domain_error("internal: mu_p distribution trace identity failed");
    }

    void tail_check(const std::vector<PadicScalar>& coeffs, const std::vector<Integer>& pi,
                    int J, int E) const {
        // the last few retained terms must already be invisible at the target
        // (coefficients carry the p^E scaling)
        for (int j = J - 3; j <= J; ++j) {
            if (pi[j] == 0) continue;
            PadicScalar term = coeffs[j] * PadicScalar(Rational(pi[j]));
            if (term.valuation() < target_prec_ + E)
                throw precision_error("trace sum tail not settled at the working precision",
                                      target_prec_);
        }
    }

    // regularized Li_k at 1 via the mu_2 distribution:
    // (1 - 2^(k-1)) Li_k-reg(1) = 2^(k-1) Li_k(-1)
    PadicScalar li_reg_one(int k) const {
        Rational tk = 1;
        for (int i = 0; i < k - 1; ++i) tk *= 2;
        return V_.at(k) * PadicScalar(tk / (Rational(1) - tk));
    }

    PadicScalar compute_value(const IntegrationWord& w) {
        if (w.empty()) return PadicScalar(1L);
        bool all0 = true, all1 = true;
        for (int l : w) (l ? all0 : all1) = false;
        if (all0 || all1) return zero_at_work();  // powers of log z resp. log(z-1)
        if (w.front() == 0) {
            // shuffle regularization: 0 = value((0)) value(rest) expands over
            // the insertions of 0 into rest; the leading insertion is w itself
            IntegrationWord rest(w.begin() + 1, w.end());
            std::map<IntegrationWord, long> counts;
            for (size_t pos = 0; pos <= rest.size(); ++pos) {
                IntegrationWord v = rest;
                v.insert(v.begin() + pos, 0);
                counts[v] += 1;
            }
            long mult_w = counts.at(w);
            PadicScalar acc;
            for (const auto& [v, mult] : counts) {
                if (v == w) continue;
                acc += regularized_value(v) * PadicScalar(mult);
            }
            return -acc / PadicScalar(mult_w);
        }
        // admissible: depth-1 words (1, 0^m) from the distribution relations
        bool depth1 = true;
        for (size_t i = 1; i < w.size(); ++i)
            if (w[i] != 0) depth1 = false;
        if (depth1) {
            int k = (int)w.size();
            if (k == 1) return zero_at_work();  // log(1-z) -> log(-1) = 0
            return -li_reg_one(k);              // I = -Li_k
        }
        if (w.size() == 2) {
            // (1,1) already covered by all1
            throw domain_error("internal: unexpected weight-2 word");
        }
        if (w.size() == 3) {
            // mixed weight-3 words: path reversal z -> 1-z swaps the letters
            // and inverts h, giving value(w) = -value(swap(w)) once the
            // weight-1 values vanish; swap(w) is non-admissible and reduces
            // by the shuffle rule above
            IntegrationWord sw = w;
            for (auto& l : sw) l = 1 - l;
            return -regularized_value(sw);
        }
        throw domain_error("regularized_value: weight beyond the implemented closure");
    }

    PadicScalar zero_at_work() const { return PadicScalar(p_, work_prec_, Integer(0)); }

    long p_;
    int wmax_, target_prec_, work_prec_;
    std::map<int, PadicScalar> V_;
    std::map<IntegrationWord, PadicScalar> value_cache_;
};

// ---------------------------------------------------------------------------
// Public, cache-backed entry points
// ---------------------------------------------------------------------------

struct GSeries {
    TruncatedSeries<PadicScalar> series;
    long p;
    int weight_cap;
    int claimed_precision;
};

namespace detail {
inline PmzvEngine& engine_for(long p, int wmax, int precision) {
    static std::mutex mu;
    static std::map<std::tuple<long, int, int>, std::unique_ptr<PmzvEngine>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, wmax, precision);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<PmzvEngine>(p, wmax, precision)).first;
    return *it->second;
}
}  // namespace detail

inline PadicScalar regularized_value_at_t10(const IntegrationWord& w, long p, int precision) {
    return detail::engine_for(p, std::max<int>(1, (int)w.size()), precision)
        .regularized_value(w);
}

inline TruncatedSeries<PadicScalar> regularized_h(long p, int wmax, int precision) {
    return detail::engine_for(p, wmax, precision).regularized_h();
}

inline GSeries compute_g(long p, int wmax, int precision) {
    PmzvEngine& eng = detail::engine_for(p, wmax, precision);
    GSeries g{eng.compute_g(), p, wmax, precision};
    // claimed precision: the weakest justified coefficient precision
    for (const auto& [w, c] : g.series.terms()) {
        if (w.empty() || c.exact()) continue;
        g.claimed_precision = std::min(g.claimed_precision, c.precision());
    }
    return g;
}

// p^(sum s) zeta_p(s_k,...,s_1) is the coefficient of e0^(s_k-1) e1 ... e0^(s_1-1) e1.
inline Word pmzv_word(const std::vector<int>& s) {
    Word w;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (*it < 1) throw domain_error("zeta indices must be >= 1");
        for (int i = 0; i < *it - 1; ++i) w.push_back(0);
        w.push_back(1);
    }
    return w;
}

inline PadicScalar pmzv(long p, const std::vector<int>& s, int precision) {
    int weight = 0;
    for (int si : s) weight += si;
    if (weight < 1) throw domain_error("empty index tuple");
    GSeries g = compute_g(p, weight, precision);
    PadicScalar coeff = g.series.coefficient(pmzv_word(s));
    if (coeff.exact()) coeff = coeff.concretized(p, precision + weight);
    int v = coeff.valuation();
    if (v < weight && v < coeff.precision())
        throw domain_error("zeta_p value has negative valuation " + std::to_string(v - weight) +
                           ": not representable as a residue class (multiply by p^" +
                           std::to_string(weight - v) + " to recover the unit part)");
    Integer pw = pow_ui(Integer(p), weight);
    PadicScalar denom(p, coeff.precision() + weight, pw);
    return coeff / denom;  // reduces precision by the weight, as documented
}

}  // namespace grt
