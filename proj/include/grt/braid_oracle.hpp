#pragma once

#include <map>
#include <string>
#include <vector>

#include "grt/braid.hpp"
#include "grt/linalg.hpp"

namespace grt {

// Independent verifier for U(H_n): spans the graded two-sided ideal generated
// by the row-sum relators (degree 1) and the disjoint-commutator relators
// (degree 2) inside the free associative algebra on the symmetric generators,
// and takes the quotient. Nothing here touches the smash-product normal form.
//
// The degree-1 relators are eliminated first (natural column order, which is
// a different pivot choice than the smash basis makes); the commutators are
// rewritten over the surviving letters and their ideal is accumulated degree
// by degree: I_d = sum_x x*I_{d-1} + I_{d-1}*x (+ generators at their degree).
class QuotientOracle {
public:
    QuotientOracle(int n, int degree, long work_budget = 200'000'000)
        : n_(n), degree_(degree) {
        if (n < 3 || n > 5) throw domain_error("quotient_oracle supports n in {3,4,5}");
        if (degree < 0) throw domain_error("degree must be >= 0");
        deg1_ = solve_degree_one(n);  // natural elimination order
        k_ = deg1_.dimension;

        echelons_.resize(degree_ + 1, SparseEchelon(work_budget));
        if (k_ > 0 && degree_ >= 2) {
            // disjoint commutators over the free letters
            std::vector<SparseEchelon::Row> relators;
            for (const auto& [pq, rs] : disjoint_pairs(n_)) {
                std::vector<Rational> u = deg1_.expressions.at(pq);
                std::vector<Rational> v = deg1_.expressions.at(rs);
                std::map<int, Rational> row;
                for (int s = 0; s < k_; ++s) {
                    if (u[s] == 0) continue;
                    for (int t = 0; t < k_; ++t) {
                        if (v[t] == 0) continue;
                        row[s * k_ + t] += u[s] * v[t];
                        row[t * k_ + s] -= u[s] * v[t];
                    }
                }
                SparseEchelon::Row r;
                for (const auto& [c, q] : row)
                    if (q != 0) r.emplace_back(c, q);
                if (!r.empty()) relators.push_back(std::move(r));
            }
            for (const auto& r : relators) echelons_[2].insert(r);
            for (int d = 3; d <= degree_; ++d) {
                // left and right letter multiples of the previous echelon
                for (const auto& [lead, row] : echelons_[d - 1].pivot_rows()) {
                    long shift = 1;
                    for (int i = 0; i < d - 1; ++i) shift *= k_;
                    for (int x = 0; x < k_; ++x) {
                        SparseEchelon::Row lrow, rrow;
                        lrow.reserve(row.size());
                        rrow.reserve(row.size());
                        for (const auto& [c, q] : row) {
                            lrow.emplace_back((int)(x * shift + c), q);
                            rrow.emplace_back(c * k_ + x, q);
                        }
                        std::sort(lrow.begin(), lrow.end());
                        std::sort(rrow.begin(), rrow.end());
                        echelons_[d].insert(std::move(lrow));
                        echelons_[d].insert(std::move(rrow));
                    }
                }
            }
        }
    }

    int n() const { return n_; }
    int free_letters() const { return k_; }
    const DegreeOneSolution& degree_one() const { return deg1_; }

    long dimension(int d) const {
        if (d == 0) return 1;
        if (k_ == 0) return 0;
        long total = 1;
        for (int i = 0; i < d; ++i) total *= k_;
        if (d == 1) return k_;
        return total - echelons_.at(d).rank();
    }

    // Monomial transversal of the degree-d component: the non-pivot words.
    std::vector<Word> transversal(int d) const {
        std::vector<Word> out;
        if (d == 0) {
            out.push_back(Word{});
            return out;
        }
        if (k_ == 0) return out;
        long total = 1;
        for (int i = 0; i < d; ++i) total *= k_;
        for (long idx = 0; idx < total; ++idx) {
            if (d >= 2 && echelons_.at(d).has_pivot((int)idx)) continue;
            out.push_back(word_of_index(idx, d));
        }
        return out;
    }

    // Reduce a degree-d vector (sparse over monomial indices) to canonical
    // form modulo the ideal.
    SparseEchelon::Row reduce(SparseEchelon::Row row, int d) const {
        if (d >= 2 && d <= degree_) echelons_.at(d).reduce(row);
        return row;
    }

    long monomial_index(const Word& w) const {
        long idx = 0;
        for (uint8_t l : w) idx = idx * k_ + l;
        return idx;
    }
    Word word_of_index(long idx, int d) const {
        Word w(d, 0);
        for (int i = d - 1; i >= 0; --i) {
            w[i] = (uint8_t)(idx % k_);
            idx /= k_;
        }
        return w;
    }

private:
    int n_, degree_, k_ = 0;
    DegreeOneSolution deg1_;
    std::vector<SparseEchelon> echelons_;
};

inline QuotientOracle quotient_oracle(int n, int d, long work_budget = 200'000'000) {
    if (d > 5) throw resource_error("quotient_oracle: degree > 5 exceeds the dense-elimination cap");
    return QuotientOracle(n, d, work_budget);
}

}  // namespace grt
