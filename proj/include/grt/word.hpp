#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "grt/errors.hpp"

namespace grt {

// Ordered finite alphabet. The construction order fixes the Lyndon order
// downstream, so it is immutable.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
        if (letters_.empty()) throw domain_error("alphabet must be nonempty");
        for (size_t i = 0; i < letters_.size(); ++i) {
            if (!index_.emplace(letters_[i], (int)i).second)
                throw domain_error("duplicate letter: " + letters_[i]);
        }
    }

    int size() const { return (int)letters_.size(); }
    const std::string& letter(int i) const { return letters_.at(i); }
    const std::vector<std::string>& letters() const { return letters_; }
    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw domain_error("unknown letter: " + name);
        return it->second;
    }
    bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }

private:
    std::vector<std::string> letters_;
    std::map<std::string, int> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr make_alphabet(std::vector<std::string> letters) {
    return std::make_shared<const Alphabet>(std::move(letters));
}

// Word = sequence of letter indices; the empty word is the unit.
using Word = std::vector<uint8_t>;

// Canonical order: by length, then lexicographic by letter index. This is
// also the term order used in serialized files.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

inline Word word_concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

inline std::string word_text(const Word& w, const Alphabet& alpha) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ".";
        s += alpha.letter(w[i]);
    }
    return s;
}

// All interleavings of u and v with multiplicity.
inline void shuffle_words_into(const Word& u, const Word& v, std::map<Word, long, WordLess>& out,
                               Word& prefix) {
    if (u.empty() && v.empty()) {
        out[prefix] += 1;
        return;
    }
    if (!u.empty()) {
        prefix.push_back(u.front());
        Word u2(u.begin() + 1, u.end());
        shuffle_words_into(u2, v, out, prefix);
        prefix.pop_back();
    }
    if (!v.empty()) {
        prefix.push_back(v.front());
        Word v2(v.begin() + 1, v.end());
        shuffle_words_into(u, v2, out, prefix);
        prefix.pop_back();
    }
}

inline std::map<Word, long, WordLess> shuffle_words(const Word& u, const Word& v) {
    std::map<Word, long, WordLess> out;
    Word prefix;
    shuffle_words_into(u, v, out, prefix);
    return out;
}

}  // namespace grt
