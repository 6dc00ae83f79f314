#pragma once

#include <gmpxx.h>

#include <string>

#include "grt/errors.hpp"

namespace grt {

// Exact rational arithmetic. mpq_class keeps gcd(num,den)=1 and den>0
// canonical, which is exactly the invariant the coefficient field needs.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return q.get_num() == 0; }

// The two-argument mpq_class constructor does not reduce; this does.
inline Rational make_rational(long num, long den) {
    if (den == 0) throw domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "a" or "a/b".
inline Rational parse_rational(const std::string& text) {
    try {
        Rational q;
        if (q.set_str(text, 10) != 0) throw parse_error("bad rational: " + text);
        if (q.get_den() == 0) throw parse_error("zero denominator: " + text);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw parse_error("bad rational: " + text);
    }
}

inline Integer pow_ui(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// v_p(n) for n != 0.
inline int int_valuation(Integer n, const Integer& p) {
    if (n == 0) throw domain_error("valuation of zero integer");
    int v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace grt
