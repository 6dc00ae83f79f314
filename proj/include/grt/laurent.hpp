#pragma once

#include <map>
#include <string>
#include <vector>

#include "grt/errors.hpp"
#include "grt/rational.hpp"

namespace grt {

// Sparse multivariate Laurent polynomial over Q, exponents in Z^r. Just
// enough structure to verify gauge transformations symbolically.
class Laurent {
public:
    using Exp = std::vector<int>;

    Laurent() = default;
    explicit Laurent(int nvars) : nvars_(nvars) {}
    Laurent(int nvars, const Rational& c) : nvars_(nvars) {
        if (c != 0) terms_[Exp(nvars, 0)] = c;
    }

    static Laurent monomial(int nvars, const Exp& e, const Rational& c) {
        Laurent l(nvars);
        if (c != 0) l.terms_[e] = c;
        return l;
    }

    int nvars() const { return nvars_; }
    const std::map<Exp, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (const auto& [e, c] : b.terms_) r.add(e, c);
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (const auto& [e, c] : b.terms_) r.add(e, -c);
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r(a.nvars_);
        for (const auto& [e1, c1] : a.terms_)
            for (const auto& [e2, c2] : b.terms_) {
                Exp e = e1;
                for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
                r.add(e, c1 * c2);
            }
        return r;
    }
    Laurent scaled(const Rational& c) const {
        Laurent r(nvars_);
        if (c == 0) return r;
        for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
        return r;
    }
    friend bool operator==(const Laurent& a, const Laurent& b) { return (a - b).is_zero(); }

    // t_i d/dt_i
    Laurent theta(int i) const {
        Laurent r(nvars_);
        for (const auto& [e, c] : terms_) r.add(e, c * Rational(e[i]));
        return r;
    }

    void add(const Exp& e, const Rational& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    int nvars_ = 0;
    std::map<Exp, Rational> terms_;
};

// Dense matrix of Laurent polynomials.
class LaurentMatrix {
public:
    LaurentMatrix(int rows, int cols, int nvars)
        : rows_(rows), cols_(cols), a_((size_t)rows * cols, Laurent(nvars)), nvars_(nvars) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Laurent& operator()(int i, int j) { return a_[(size_t)i * cols_ + j]; }
    const Laurent& operator()(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

    friend LaurentMatrix operator*(const LaurentMatrix& x, const LaurentMatrix& y) {
        if (x.cols_ != y.rows_) throw domain_error("matrix shape mismatch");
        LaurentMatrix r(x.rows_, y.cols_, x.nvars_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                if (x(i, k).is_zero()) continue;
                for (int j = 0; j < y.cols_; ++j) r(i, j) = r(i, j) + x(i, k) * y(k, j);
            }
        return r;
    }
    friend LaurentMatrix operator+(const LaurentMatrix& x, const LaurentMatrix& y) {
        LaurentMatrix r(x.rows_, x.cols_, x.nvars_);
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend bool operator==(const LaurentMatrix& x, const LaurentMatrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (size_t i = 0; i < x.a_.size(); ++i)
            if (!(x.a_[i] == y.a_[i])) return false;
        return true;
    }

    LaurentMatrix theta(int var) const {
        LaurentMatrix r(rows_, cols_, nvars_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].theta(var);
        return r;
    }

private:
    int rows_, cols_;
    std::vector<Laurent> a_;
    int nvars_;
};

}  // namespace grt
