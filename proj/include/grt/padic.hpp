#pragma once

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

#include "grt/errors.hpp"
#include "grt/rational.hpp"

namespace grt {

// Capped-absolute-precision p-adic number: a residue representative modulo
// p^N plus the precision exponent N. Arithmetic carries the minimum justified
// precision of its operands; it never overstates.
//
// A scalar with p()==0 is an exact rational constant (numerator prime-free
// bookkeeping is irrelevant for those); it concretizes on contact with a
// contextual scalar. Exact zero is the default-constructed value.
class PadicScalar {
public:
    PadicScalar() : p_(0), prec_(0), exact_(0) {}

    // Exact rational constant.
    explicit PadicScalar(const Rational& q) : p_(0), prec_(0), exact_(q) {}
    explicit PadicScalar(long n) : p_(0), prec_(0), exact_(n) {}

    // Contextual residue class value mod p^N.
    PadicScalar(long p, int prec, const Integer& value) : p_(p), prec_(prec) {
        check_context(p, prec);
        Integer m = pow_ui(Integer(p), prec);
        mpz_mod(value_.get_mpz_t(), value.get_mpz_t(), m.get_mpz_t());
    }

    static PadicScalar from_rational(long p, int prec, const Rational& q) {
        check_context(p, prec);
        if (q == 0) return PadicScalar(p, prec, Integer(0));
        Integer num = q.get_num(), den = q.get_den();
        int vn = int_valuation(num, p), vd = int_valuation(den, p);
        if (vn - vd < 0)
            throw domain_error("rational " + grt::to_string(q) +
                               " is not a p-adic integer at p=" + std::to_string(p));
        Integer m = pow_ui(Integer(p), prec);
        num /= pow_ui(Integer(p), vd);  // keep the p-power in the numerator
        den /= pow_ui(Integer(p), vd);
        Integer deninv;
        if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
            throw domain_error("denominator not invertible mod p^N");
        return PadicScalar(p, prec, num * deninv);
    }

    bool exact() const { return p_ == 0; }
    long p() const { return p_; }
    int precision() const { return prec_; }
    const Integer& residue() const { return value_; }
    const Rational& exact_value() const { return exact_; }

    bool is_zero() const {
        if (exact()) return exact_ == 0;
        return value_ == 0;  // representative reduced mod p^N
    }

    // Measured valuation: exact scalars report their true valuation (needs a
    // prime for exact non-integers, so exact ones answer lazily on contact);
    // contextual zeros report N (nothing visible past the cap).
    int valuation() const {
        if (exact()) {
            if (exact_ == 0) return INT_MAX;
            throw domain_error("valuation of an exact constant needs a prime context");
        }
        if (value_ == 0) return prec_;
        return int_valuation(value_, p_);
    }

    PadicScalar operator-() const {
        if (exact()) return PadicScalar(-exact_);
        return PadicScalar(p_, prec_, modulus() - value_);
    }

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
        if (a.exact() && b.exact()) return PadicScalar(a.exact_ + b.exact_);
        auto [x, y] = align(a, b);
        int n = std::min(x.prec_, y.prec_);
        return PadicScalar(x.p_, n, x.value_ + y.value_);
    }
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
        if (a.exact() && b.exact()) return PadicScalar(a.exact_ * b.exact_);
        if (a.exact()) return b * a;
        // a contextual
        if (b.exact()) {
            if (b.exact_ == 0) return PadicScalar();
            // split b = p^e u; a negative e is a genuine division by p^|e|
            Integer num = b.exact_.get_num(), den = b.exact_.get_den();
            int e = int_valuation(num, a.p_) - int_valuation(den, a.p_);
            if (e < 0) {
                Rational u = b.exact_ * Rational(pow_ui(Integer(a.p_), -e));
                PadicScalar t = a * PadicScalar(u);
                PadicScalar pe(a.p_, t.prec_ - e, pow_ui(Integer(a.p_), -e));
                return t / pe;
            }
            PadicScalar bc = from_rational(a.p_, a.prec_ + std::max(e, 0) + 2, b.exact_);
            int vb = bc.valuation();
            int n = a.prec_ + std::min(vb, std::max(e, 0) + 1);
            return PadicScalar(a.p_, n, a.value_ * bc.value_);
        }
        require_same_p(a, b);
        int va = a.valuation(), vb = b.valuation();
        long n = std::min<long>((long)a.prec_ + vb, (long)b.prec_ + va);
        if (a.value_ == 0 && b.value_ == 0) n = std::min<long>(n, (long)a.prec_ + b.prec_);
        return PadicScalar(a.p_, (int)n, a.value_ * b.value_);
    }

    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
        if (b.is_zero()) throw domain_error("p-adic division by zero");
        if (a.exact() && b.exact()) return PadicScalar(a.exact_ / b.exact_);
        if (b.exact()) {
            // split b = p^e * u with u a p-unit; dividing by p^e is the
            // precision-reducing part and is handled contextually
            Integer num = b.exact_.get_num(), den = b.exact_.get_den();
            int e = int_valuation(num, a.p_) - int_valuation(den, a.p_);
            Rational u = b.exact_;
            if (e > 0) u /= Rational(pow_ui(Integer(a.p_), e));
            if (e < 0) u *= Rational(pow_ui(Integer(a.p_), -e));
            PadicScalar t = a * PadicScalar(Rational(1) / u);
            if (e == 0) return t;
            if (e < 0) return t * PadicScalar(Rational(pow_ui(Integer(a.p_), -e)));
            PadicScalar pe(t.p_, t.prec_ + e, pow_ui(Integer(t.p_), e));
            return t / pe;
        }
        // b contextual
        PadicScalar ac = a.exact() ? concretize(a, b.p_, b.prec_ + 64) : a;
        require_same_p(ac, b);
        int vb = b.valuation();
        if (vb >= b.prec_)
            throw domain_error("divisor indistinguishable from zero at its precision");
        int va = ac.valuation();
        if (va < vb && va < ac.prec_)
            throw domain_error("quotient not a p-adic integer (valuation " +
                               std::to_string(va - vb) + ")");
        int relprec = std::min(ac.prec_ - std::min(va, ac.prec_), b.prec_ - vb);
        int n = (std::min(va, ac.prec_) - vb) + relprec;
        if (va >= ac.prec_) n = ac.prec_ - vb;  // numerator is a precision-zero
        if (n <= 0)
            throw precision_error("division underflow: no justified digits remain", n);
        Integer m = pow_ui(Integer(b.p_), n + vb);
        Integer bu = b.value_ / pow_ui(Integer(b.p_), vb);
        Integer au = ac.value_;
        if (va >= ac.prec_) au = 0;
        else au /= pow_ui(Integer(b.p_), vb);
        Integer binv;
        Integer mu = pow_ui(Integer(b.p_), n);
        if (mpz_invert(binv.get_mpz_t(), bu.get_mpz_t(), mu.get_mpz_t()) == 0)
            throw domain_error("internal: unit not invertible");
        return PadicScalar(b.p_, n, au * binv);
    }

    PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
    PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
    PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }
    PadicScalar& operator/=(const PadicScalar& o) { return *this = *this / o; }

    // Equality at shared precision.
    friend bool operator==(const PadicScalar& a, const PadicScalar& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const PadicScalar& a, const PadicScalar& b) { return !(a == b); }

    // Deliberately forget digits (never raises precision).
    PadicScalar truncated(int n) const {
        if (exact()) return *this;
        if (n >= prec_) return *this;
        if (n <= 0) throw precision_error("truncation to no digits", n);
        return PadicScalar(p_, n, value_);
    }

    PadicScalar concretized(long p, int prec) const { return concretize(*this, p, prec); }

    // Teichmueller part of a unit: the (p-1)-st root of unity congruent to it
    // mod p, by iterated p-power maps until stabilization. For p = 2 the
    // convention is the sign making the principal part 1 mod 4.
    PadicScalar teichmueller() const {
        if (exact()) throw domain_error("teichmueller needs a contextual scalar");
        if (valuation() != 0) throw domain_error("teichmueller of a non-unit");
        if (p_ == 2) {
            unsigned long m4 = mpz_fdiv_ui(value_.get_mpz_t(), 4);
            long sign = (prec_ == 1 || m4 == 1) ? 1 : -1;
            return PadicScalar(2, prec_, sign == 1 ? Integer(1) : pow_ui(Integer(2), prec_) - 1);
        }
        Integer m = modulus();
        Integer t = value_;
        for (int i = 0; i <= prec_ + 1; ++i) {
            Integer t2;
            mpz_powm_ui(t2.get_mpz_t(), t.get_mpz_t(), (unsigned long)p_, m.get_mpz_t());
            if (t2 == t) break;
            t = t2;
        }
        return PadicScalar(p_, prec_, t);
    }

    std::string to_string() const {
        if (exact()) return grt::to_string(exact_) + " (exact)";
        return value_.get_str() + " + O(" + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
    }

    Integer modulus() const { return pow_ui(Integer(p_), prec_); }

private:
    static void check_context(long p, int prec) {
        if (p < 2) throw domain_error("p must be a prime >= 2");
        if (prec < 1) throw domain_error("precision exponent must be positive");
    }
    static void require_same_p(const PadicScalar& a, const PadicScalar& b) {
        if (a.p_ != b.p_) throw domain_error("mismatched primes");
    }
    static PadicScalar concretize(const PadicScalar& a, long p, int prec) {
        if (!a.exact()) return a;
        return from_rational(p, prec, a.exact_);
    }
    static std::pair<PadicScalar, PadicScalar> align(const PadicScalar& a, const PadicScalar& b) {
        if (a.exact()) return {concretize(a, b.p_, b.prec_), b};
        if (b.exact()) return {a, concretize(b, a.p_, a.prec_)};
        require_same_p(a, b);
        return {a, b};
    }

    long p_;
    int prec_;
    Integer value_;
    Rational exact_;
};

// Element of Q_p[l(p)]: polynomial in the formal symbol l(p) = log p.
class PadicStScalar {
public:
    PadicStScalar() = default;
    explicit PadicStScalar(const PadicScalar& c) : coeffs_{c} { trim(); }
    explicit PadicStScalar(std::vector<PadicScalar> coeffs) : coeffs_(std::move(coeffs)) {
        check_shared_p();
        trim();
    }

    static PadicStScalar lp(long p, int prec) {
        return PadicStScalar({PadicScalar(p, prec, Integer(0)), PadicScalar(1L)});
    }

    const std::vector<PadicScalar>& coefficients() const { return coeffs_; }
    int degree() const { return (int)coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    PadicScalar coefficient(int k) const {
        if (k < 0 || k >= (int)coeffs_.size()) return PadicScalar();
        return coeffs_[k];
    }

    friend PadicStScalar operator+(const PadicStScalar& a, const PadicStScalar& b) {
        std::vector<PadicScalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient((int)i) + b.coefficient((int)i);
        return PadicStScalar(std::move(c));
    }
    friend PadicStScalar operator-(const PadicStScalar& a, const PadicStScalar& b) {
        return a + (-b);
    }
    PadicStScalar operator-() const {
        std::vector<PadicScalar> c(coeffs_.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
        return PadicStScalar(std::move(c));
    }
    friend PadicStScalar operator*(const PadicStScalar& a, const PadicStScalar& b) {
        if (a.coeffs_.empty() || b.coeffs_.empty()) return PadicStScalar();
        std::vector<PadicScalar> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return PadicStScalar(std::move(c));
    }
    friend bool operator==(const PadicStScalar& a, const PadicStScalar& b) {
        return (a - b).is_zero();
    }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += " + ";
            s += "(" + coeffs_[i].to_string() + ")";
            if (i == 1) s += "*l(p)";
            if (i > 1) s += "*l(p)^" + std::to_string(i);
        }
        return s;
    }

private:
    void check_shared_p() const {
        long p = 0;
        for (const auto& c : coeffs_) {
            if (c.exact()) continue;
            if (p == 0) p = c.p();
            else if (c.p() != p) throw domain_error("mismatched primes in Q_p[l(p)]");
        }
    }
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<PadicScalar> coeffs_;  // coeffs_[k] multiplies l(p)^k
};

// Evaluate the polynomial at l(p) = c. The branch used throughout pmzv is
// c = 0.
inline PadicScalar specialize_lp(const PadicStScalar& x, const PadicScalar& c) {
    PadicScalar acc;
    const auto& cs = x.coefficients();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * c + *it;
    if (!c.exact()) {
        for (const auto& a : cs)
            if (!a.exact() && a.p() != c.p()) throw domain_error("mismatched primes");
    }
    return acc;
}

// log of the principal unit 1 + t, v(t) >= 1 (>= 2 when p = 2), by the
// alternating series. Precision tracking rides on the scalar operations.
inline PadicScalar principal_unit_log(const PadicScalar& u) {
    PadicScalar t = u - PadicScalar(1L);
    if (t.is_zero()) return t;
    long p = u.p();
    int vt = t.valuation();
    if (vt < 1 || (p == 2 && vt < 2)) throw domain_error("not a principal unit");
    int target = u.precision();
    PadicScalar acc;
    PadicScalar tn(1L);
    for (int n = 1;; ++n) {
        // remaining terms all have valuation >= n*vt - log_p(n)
        int logp = 0;
        for (long q = 1; q <= n; q *= p) ++logp;
        if ((long)n * vt - logp >= target && n > 1) break;
        tn = tn * t;
        PadicScalar term = tn / PadicScalar((long)n);
        if (n % 2 == 0) term = -term;
        acc += term;
    }
    return acc;
}

// Iwasawa logarithm: log(p) = l(p), log vanishes on all roots of unity.
// x = p^v * omega * <u>  =>  log x = v*l(p) + log<u>.
inline PadicStScalar iwasawa_log(const PadicScalar& x) {
    if (x.is_zero()) throw domain_error("iwasawa_log of zero");
    if (x.exact()) throw domain_error("iwasawa_log needs a contextual p-adic scalar");
    int v = x.valuation();
    if (v >= x.precision())
        throw domain_error("iwasawa_log: valuation not determinable at this precision");
    long p = x.p();
    PadicScalar unit = v == 0 ? x : x / PadicScalar(p, x.precision(), pow_ui(Integer(p), v));
    PadicScalar omega = unit.teichmueller();
    PadicScalar principal = unit / omega;
    PadicScalar logu = principal_unit_log(principal);
    std::vector<PadicScalar> coeffs{logu};
    if (v != 0) coeffs.push_back(PadicScalar((long)v));
    return PadicStScalar(std::move(coeffs));
}

// exp by its power series; requires v(x) > 1/(p-1).
inline PadicScalar padic_exp(const PadicScalar& x) {
    if (x.exact()) {
        if (x.is_zero()) return PadicScalar(1L);
        throw domain_error("padic_exp needs a contextual p-adic scalar");
    }
    long p = x.p();
    int v = x.is_zero() ? x.precision() : x.valuation();
    if (!(v >= 2 || (p >= 3 && v >= 1)))
        throw domain_error("padic_exp: valuation must exceed 1/(p-1)");
    int target = x.precision();
    PadicScalar acc(1L);
    PadicScalar term(1L);
    for (int n = 1;; ++n) {
        // v(x^n / n!) >= n*v - (n - s_p(n))/(p-1) >= n*(v - 1/(p-1)), increasing
        long svaln = 0;
        for (long q = p; q <= n; q *= p) svaln += n / q;
        if ((long)n * v - svaln >= target) break;
        term = term * x / PadicScalar((long)n);
        acc += term;
    }
    return acc.concretized(p, target);
}

}  // namespace grt
