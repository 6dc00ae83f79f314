#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "grt/series.hpp"
#include "grt/word.hpp"

namespace grt {

// Lyndon words of length exactly d over the alphabet, in lexicographic
// order (Duval's generation).
inline std::vector<Word> lyndon_words(const Alphabet& alpha, int d) {
    if (d < 1) throw domain_error("lyndon_words needs d >= 1");
    int k = alpha.size();
    std::vector<Word> out;
    Word w{0};
    while (true) {
        if ((int)w.size() == d) out.push_back(w);
        // next: extend w periodically to length d, strip maximal letters,
        // increment the last
        Word x;
        for (int i = 0; i < d; ++i) x.push_back(w[i % w.size()]);
        while (!x.empty() && x.back() == k - 1) x.pop_back();
        if (x.empty()) break;
        x.back()++;
        w = x;
    }
    return out;
}

// Witt dimension (1/d) sum_{e|d} mu(e) k^{d/e}.
inline long witt_dimension(int k, int d) {
    auto mobius = [](int n) {
        int m = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                m = -m;
            }
        }
        if (n > 1) m = -m;
        return m;
    };
    long total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        long pw = 1;
        for (int i = 0; i < d / e; ++i) pw *= k;
        total += mobius(e) * pw;
    }
    return total / d;
}

// Standard (right) Lyndon factorization w = uv with v the longest proper
// Lyndon suffix; the standard bracketing is [b(u), b(v)].
struct LyndonEntry {
    Word word;
    int left = -1;   // index into the basis, -1 for letters
    int right = -1;
};

class LyndonBasis {
public:
    LyndonBasis(AlphabetPtr alphabet, int cap) : alpha_(std::move(alphabet)), cap_(cap) {
        if (cap_ < 1) throw domain_error("cap must be >= 1");
        for (int d = 1; d <= cap_; ++d) {
            degree_begin_.push_back((int)entries_.size());
            for (const Word& w : lyndon_words(*alpha_, d)) {
                LyndonEntry e;
                e.word = w;
                if (d > 1) {
                    // longest proper Lyndon suffix
                    int split = -1;
                    for (int i = 1; i < d; ++i) {
                        Word v(w.begin() + i, w.end());
                        if (is_lyndon(v)) {
                            split = i;
                            break;
                        }
                    }
                    Word u(w.begin(), w.begin() + split);
                    Word v(w.begin() + split, w.end());
                    e.left = index_of(u);
                    e.right = index_of(v);
                }
                index_.emplace(e.word, (int)entries_.size());
                entries_.push_back(std::move(e));
            }
        }
        degree_begin_.push_back((int)entries_.size());
    }

    static std::shared_ptr<const LyndonBasis> get(const AlphabetPtr& alphabet, int cap);

    const AlphabetPtr& alphabet() const { return alpha_; }
    int cap() const { return cap_; }
    int size() const { return (int)entries_.size(); }
    const LyndonEntry& entry(int i) const { return entries_.at(i); }
    int degree_of(int i) const { return (int)entries_.at(i).word.size(); }
    // indices [first, last) of the degree-d block
    std::pair<int, int> degree_range(int d) const {
        if (d < 1 || d > cap_) return {0, 0};
        return {degree_begin_[d - 1], degree_begin_[d]};
    }
    int index_of(const Word& w) const {
        auto it = index_.find(w);
        if (it == index_.end()) throw domain_error("not a Lyndon basis word");
        return it->second;
    }

    // Expansion of the standard bracketing in the associative algebra.
    template <class R = Rational>
    TruncatedSeries<R> expansion(int i) const {
        const LyndonEntry& e = entries_.at(i);
        if (e.left < 0) return TruncatedSeries<R>::letter(alpha_, cap_, e.word[0]);
        TruncatedSeries<R> a = expansion<R>(e.left);
        TruncatedSeries<R> b = expansion<R>(e.right);
        return a * b - b * a;
    }

    static bool is_lyndon(const Word& w) {
        if (w.empty()) return false;
        for (size_t i = 1; i < w.size(); ++i) {
            Word rot(w.begin() + i, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + i);
            if (!(w < rot)) return false;
        }
        return true;
    }

private:
    AlphabetPtr alpha_;
    int cap_;
    std::vector<LyndonEntry> entries_;
    std::vector<int> degree_begin_;
    std::map<Word, int, WordLess> index_;
};

using LyndonBasisPtr = std::shared_ptr<const LyndonBasis>;

// Basis construction is memoized behind a one-time initializer per
// (alphabet letters, cap).
inline LyndonBasisPtr LyndonBasis::get(const AlphabetPtr& alphabet, int cap) {
    static std::mutex mu;
    static std::map<std::pair<std::vector<std::string>, int>, LyndonBasisPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(alphabet->letters(), cap);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ptr = std::make_shared<const LyndonBasis>(alphabet, cap);
    cache.emplace(key, ptr);
    return ptr;
}

// Element of the free Lie algebra in Lyndon coordinates, sparse.
template <class R = Rational>
class LieElement {
public:
    explicit LieElement(LyndonBasisPtr basis) : basis_(std::move(basis)) {}

    static LieElement letter(const LyndonBasisPtr& basis, int letter_index) {
        LieElement e(basis);
        e.coords_[basis->index_of(Word{(uint8_t)letter_index})] = ring::from_long<R>(1);
        return e;
    }

    const LyndonBasisPtr& basis() const { return basis_; }
    const std::map<int, R>& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }

    void add(int idx, const R& c) {
        if (idx < 0 || idx >= basis_->size()) throw domain_error("bad basis index");
        auto it = coords_.find(idx);
        if (it == coords_.end()) {
            if (!ring::is_zero(c)) coords_.emplace(idx, c);
        } else {
            it->second += c;
            if (ring::is_zero(it->second)) coords_.erase(it);
        }
    }

    friend LieElement operator+(const LieElement& a, const LieElement& b) {
        a.require_same(b);
        LieElement r = a;
        for (const auto& [i, c] : b.coords_) r.add(i, c);
        return r;
    }
    friend LieElement operator-(const LieElement& a, const LieElement& b) {
        a.require_same(b);
        LieElement r = a;
        for (const auto& [i, c] : b.coords_) r.add(i, -c);
        return r;
    }
    LieElement operator-() const {
        LieElement r(basis_);
        for (const auto& [i, c] : coords_) r.coords_.emplace(i, -c);
        return r;
    }
    LieElement scaled(const R& c) const {
        LieElement r(basis_);
        if (ring::is_zero(c)) return r;
        for (const auto& [i, k] : coords_) r.coords_.emplace(i, k * c);
        return r;
    }
    friend bool operator==(const LieElement& a, const LieElement& b) {
        a.require_same(b);
        return (a - b).is_zero();
    }

    void require_same(const LieElement& o) const {
        if (basis_ != o.basis_) {
            if (!(*basis_->alphabet() == *o.basis_->alphabet()) ||
                basis_->cap() != o.basis_->cap())
                throw cap_mismatch_error("mixing Lyndon bases");
        }
    }

private:
    LyndonBasisPtr basis_;
    std::map<int, R> coords_;
};

template <class R>
TruncatedSeries<R> lie_to_series(const LieElement<R>& a) {
    TruncatedSeries<R> r(a.basis()->alphabet(), a.basis()->cap());
    for (const auto& [i, c] : a.coords()) r += a.basis()->template expansion<R>(i).scaled(c);
    return r;
}

// Triangular elimination against the basis expansions, degree by degree.
// Standard bracketings expand as the word itself plus lexicographically
// larger words, so within a degree the system is unitriangular.
template <class R>
LieElement<R> project_to_lie(const TruncatedSeries<R>& s, const LyndonBasisPtr& basis) {
    LieElement<R> out(basis);
    TruncatedSeries<R> rest = s;
    for (int d = 1; d <= basis->cap(); ++d) {
        auto [first, last] = basis->degree_range(d);
        for (int i = first; i < last; ++i) {
            R c = rest.coefficient(basis->entry(i).word);
            if (ring::is_zero(c)) continue;
            out.add(i, c);
            rest -= basis->template expansion<R>(i).scaled(c);
        }
        if (!rest.graded_part(d).is_zero())
            throw domain_error("project_to_lie: residue in degree " + std::to_string(d) +
                               " (input not in the Lie algebra)");
    }
    return out;
}

// Inverse of lie_to_series on primitive series. Non-primitive inputs are
// rejected with the offending shuffle pair.
template <class R>
LieElement<R> series_to_lie(const TruncatedSeries<R>& s, const LyndonBasisPtr& basis) {
    if (s.cap() != basis->cap() || !(*s.alphabet() == *basis->alphabet()))
        throw cap_mismatch_error("series_to_lie: basis mismatch");
    ShuffleReport rep = is_primitive(s);
    if (!rep.pass) {
        std::string msg = "series_to_lie: input not primitive";
        if (rep.failing_pair) {
            msg += " (fails at shuffle pair " + word_text(rep.failing_pair->first, *s.alphabet()) +
                   " , " + word_text(rep.failing_pair->second, *s.alphabet()) + ")";
        }
        throw domain_error(msg);
    }
    return project_to_lie(s, basis);
}

template <class R>
LieElement<R> bracket(const LieElement<R>& a, const LieElement<R>& b) {
    a.require_same(b);
    TruncatedSeries<R> sa = lie_to_series(a), sb = lie_to_series(b);
    // contributions above the cap are silently truncated
    return project_to_lie(sa * sb - sb * sa, a.basis());
}

// log(exp(a) exp(b)) through the series ring, projected back.
template <class R>
LieElement<R> bch(const LieElement<R>& a, const LieElement<R>& b) {
    a.require_same(b);
    TruncatedSeries<R> prod = exp_series(lie_to_series(a)) * exp_series(lie_to_series(b));
    return project_to_lie(log_series(prod), a.basis());
}

}  // namespace grt
