#pragma once

#include <map>
#include <optional>
#include <utility>

#include "grt/errors.hpp"
#include "grt/rational.hpp"
#include "grt/word.hpp"

namespace grt {

namespace ring {
// Ring glue for the coefficient types used in series. Rational and
// PadicScalar both have operators; what differs is zero/one construction and
// the zero test.
template <class R>
inline bool is_zero(const R& r) {
    return r.is_zero();
}
template <>
inline bool is_zero<Rational>(const Rational& r) {
    return r.get_num() == 0;
}
template <class R>
inline R from_long(long n) {
    return R(n);
}
template <class R>
inline R from_rational(const Rational& q) {
    return R(q);
}
template <>
inline Rational from_rational<Rational>(const Rational& q) {
    return q;
}
}  // namespace ring

// Degree-truncated noncommutative formal power series, sparse word-indexed.
// The cap is a hard attribute: combining different caps is an error, never an
// implicit min.
template <class R>
class TruncatedSeries {
public:
    using Terms = std::map<Word, R, WordLess>;

    TruncatedSeries(AlphabetPtr alphabet, int cap) : alpha_(std::move(alphabet)), cap_(cap) {
        if (cap_ < 0) throw domain_error("cap must be nonnegative");
    }

    static TruncatedSeries unit(AlphabetPtr alphabet, int cap) {
        TruncatedSeries s(std::move(alphabet), cap);
        s.add_term(Word{}, ring::from_long<R>(1));
        return s;
    }
    static TruncatedSeries letter(AlphabetPtr alphabet, int cap, int i) {
        TruncatedSeries s(std::move(alphabet), cap);
        s.add_term(Word{(uint8_t)i}, ring::from_long<R>(1));
        return s;
    }

    const AlphabetPtr& alphabet() const { return alpha_; }
    int cap() const { return cap_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Stored coefficient or zero; beyond the cap the information was
    // truncated away, which is an error rather than a silent zero.
    R coefficient(const Word& w) const {
        if ((int)w.size() > cap_)
            throw out_of_cap_error("coefficient of a word longer than the cap");
        auto it = terms_.find(w);
        if (it == terms_.end()) return R();
        return it->second;
    }

    void add_term(const Word& w, const R& c) {
        if ((int)w.size() > cap_) return;  // truncated
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            if (!ring::is_zero(c)) terms_.emplace(w, c);
        } else {
            it->second += c;
            if (ring::is_zero(it->second)) terms_.erase(it);
        }
    }

    void set_term(const Word& w, const R& c) {
        if ((int)w.size() > cap_)
            throw out_of_cap_error("set_term beyond cap");
        if (ring::is_zero(c)) terms_.erase(w);
        else terms_[w] = c;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.require_compatible(b);
        TruncatedSeries r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, c);
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.require_compatible(b);
        TruncatedSeries r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
        return r;
    }
    TruncatedSeries operator-() const {
        TruncatedSeries r(alpha_, cap_);
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
        return r;
    }
    TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
    TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this = *this - o; }

    TruncatedSeries scaled(const R& c) const {
        TruncatedSeries r(alpha_, cap_);
        if (ring::is_zero(c)) return r;
        for (const auto& [w, k] : terms_) r.add_term(w, k * c);
        return r;
    }

    // Concatenation product; words beyond the cap are discarded.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.require_compatible(b);
        TruncatedSeries r(a.alpha_, a.cap_);
        for (const auto& [u, cu] : a.terms_) {
            if ((int)u.size() > a.cap_) continue;
            for (const auto& [v, cv] : b.terms_) {
                if ((int)(u.size() + v.size()) > a.cap_) continue;
                r.add_term(word_concat(u, v), cu * cv);
            }
        }
        return r;
    }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.require_compatible(b);
        return (a - b).is_zero();
    }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) {
        return !(a == b);
    }

    // Keep only degree-d terms.
    TruncatedSeries graded_part(int d) const {
        TruncatedSeries r(alpha_, cap_);
        for (const auto& [w, c] : terms_)
            if ((int)w.size() == d) r.terms_.emplace(w, c);
        return r;
    }
    int min_degree() const {  // degree of the lowest nonzero term, cap+1 if none
        int d = cap_ + 1;
        for (const auto& [w, c] : terms_) d = std::min(d, (int)w.size());
        return d;
    }

    void require_compatible(const TruncatedSeries& o) const {
        if (cap_ != o.cap_) throw cap_mismatch_error("mixing series caps");
        if (!(*alpha_ == *o.alpha_)) throw cap_mismatch_error("mixing alphabets");
    }

private:
    AlphabetPtr alpha_;
    int cap_;
    Terms terms_;
};

// exp of a series with zero constant term.
template <class R>
TruncatedSeries<R> exp_series(const TruncatedSeries<R>& a) {
    if (!ring::is_zero(a.coefficient(Word{})))
        throw domain_error("exp_series needs zero constant term");
    TruncatedSeries<R> r = TruncatedSeries<R>::unit(a.alphabet(), a.cap());
    TruncatedSeries<R> pw = TruncatedSeries<R>::unit(a.alphabet(), a.cap());
    for (int n = 1; n <= a.cap(); ++n) {
        pw = pw * a;
        if (pw.is_zero()) break;
        R inv_n = ring::from_long<R>(1);
        for (int k = 2; k <= n; ++k) inv_n = inv_n / ring::from_long<R>(k);
        // inv_n = 1/n! accumulated freshly to keep rings without state happy
        r += pw.scaled(inv_n);
    }
    return r;
}

// log of a series with constant term 1.
template <class R>
TruncatedSeries<R> log_series(const TruncatedSeries<R>& a) {
    R c0 = a.coefficient(Word{});
    if (!(c0 == ring::from_long<R>(1)))
        throw domain_error("log_series needs constant term 1");
    TruncatedSeries<R> u = a;
    u.add_term(Word{}, -c0);  // u = a - 1
    TruncatedSeries<R> r(a.alphabet(), a.cap());
    TruncatedSeries<R> pw = TruncatedSeries<R>::unit(a.alphabet(), a.cap());
    for (int n = 1; n <= a.cap(); ++n) {
        pw = pw * u;
        if (pw.is_zero()) break;
        R coef = ring::from_long<R>(n % 2 == 1 ? 1 : -1) / ring::from_long<R>(n);
        r += pw.scaled(coef);
    }
    return r;
}

// Multiplicative inverse via the geometric series in (1 - a).
template <class R>
TruncatedSeries<R> mul_inverse(const TruncatedSeries<R>& a) {
    R c0 = a.coefficient(Word{});
    if (!(c0 == ring::from_long<R>(1)))
        throw domain_error("mul_inverse needs constant term 1");
    TruncatedSeries<R> u = TruncatedSeries<R>::unit(a.alphabet(), a.cap()) - a;  // 1 - a
    TruncatedSeries<R> r = TruncatedSeries<R>::unit(a.alphabet(), a.cap());
    TruncatedSeries<R> pw = TruncatedSeries<R>::unit(a.alphabet(), a.cap());
    for (int n = 1; n <= a.cap(); ++n) {
        pw = pw * u;
        if (pw.is_zero()) break;
        r += pw;
    }
    return r;
}

// The unique multiplicative extension of letter |-> images[letter]; images
// must share ring, cap, target alphabet and have zero constant term.
template <class R>
TruncatedSeries<R> substitute(const TruncatedSeries<R>& a,
                              const std::vector<TruncatedSeries<R>>& images) {
    if ((int)images.size() != a.alphabet()->size())
        throw domain_error("substitute: one image per letter required");
    for (size_t i = 1; i < images.size(); ++i) images[0].require_compatible(images[i]);
    for (const auto& im : images) {
        if (im.cap() != a.cap()) throw cap_mismatch_error("substitute: image cap differs");
        if (!ring::is_zero(im.coefficient(Word{})))
            throw domain_error("substitute: image has nonzero constant term");
    }
    AlphabetPtr target = images.empty() ? a.alphabet() : images[0].alphabet();
    TruncatedSeries<R> r(target, a.cap());
    // memoized prefix products: image of every word appearing as a prefix
    std::map<Word, TruncatedSeries<R>, WordLess> memo;
    memo.emplace(Word{}, TruncatedSeries<R>::unit(target, a.cap()));
    for (const auto& [w, c] : a.terms()) {
        const TruncatedSeries<R>* cur = &memo.at(Word{});
        Word pre;
        for (uint8_t l : w) {
            pre.push_back(l);
            auto it = memo.find(pre);
            if (it == memo.end()) it = memo.emplace(pre, *cur * images[l]).first;
            cur = &it->second;
        }
        r += cur->scaled(c);
    }
    return r;
}

inline std::vector<Word> enumerate_words(const Alphabet& alpha, int max_len) {
    std::vector<Word> out{Word{}};
    size_t level_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        size_t level_end = out.size();
        for (size_t i = level_begin; i < level_end; ++i) {
            for (int l = 0; l < alpha.size(); ++l) {
                Word w = out[i];
                w.push_back((uint8_t)l);
                out.push_back(std::move(w));
            }
        }
        level_begin = level_end;
    }
    return out;
}

// Outcome of a group-likeness / primitivity test; carries the first failing
// shuffle pair when it fails.
struct ShuffleReport {
    bool pass = true;
    std::optional<std::pair<Word, Word>> failing_pair;
    std::string reason;
};

// Group-like: a[empty] = 1 and a[u]a[v] = sum over shuffles of a[w] for all
// pairs with |u|+|v| <= cap. Equivalent to Delta(a) = a (x) a without ever
// materializing the coproduct.
template <class R>
ShuffleReport is_group_like(const TruncatedSeries<R>& a) {
    ShuffleReport rep;
    if (!(a.coefficient(Word{}) == ring::from_long<R>(1))) {
        rep.pass = false;
        rep.reason = "constant term is not 1";
        rep.failing_pair = std::make_pair(Word{}, Word{});
        return rep;
    }
    std::vector<Word> words = enumerate_words(*a.alphabet(), a.cap());
    for (const Word& u : words) {
        if (u.empty()) continue;
        for (const Word& v : words) {
            if (v.empty() || (int)(u.size() + v.size()) > a.cap()) continue;
            R lhs = a.coefficient(u) * a.coefficient(v);
            R rhs;
            for (const auto& [w, mult] : shuffle_words(u, v))
                rhs += a.coefficient(w) * ring::from_long<R>(mult);
            if (!(lhs == rhs)) {
                rep.pass = false;
                rep.reason = "shuffle identity fails";
                rep.failing_pair = std::make_pair(u, v);
                return rep;
            }
        }
    }
    return rep;
}

// Primitive: a[empty] = 0 and a vanishes on all proper shuffle products.
template <class R>
ShuffleReport is_primitive(const TruncatedSeries<R>& a) {
    ShuffleReport rep;
    if (!ring::is_zero(a.coefficient(Word{}))) {
        rep.pass = false;
        rep.reason = "constant term is not 0";
        rep.failing_pair = std::make_pair(Word{}, Word{});
        return rep;
    }
    std::vector<Word> words = enumerate_words(*a.alphabet(), a.cap());
    for (const Word& u : words) {
        if (u.empty()) continue;
        for (const Word& v : words) {
            if (v.empty() || (int)(u.size() + v.size()) > a.cap()) continue;
            R rhs;
            for (const auto& [w, mult] : shuffle_words(u, v))
                rhs += a.coefficient(w) * ring::from_long<R>(mult);
            if (!ring::is_zero(rhs)) {
                rep.pass = false;
                rep.reason = "pairs with a proper shuffle product";
                rep.failing_pair = std::make_pair(u, v);
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace grt
