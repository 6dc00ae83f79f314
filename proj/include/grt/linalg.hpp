#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "grt/errors.hpp"
#include "grt/rational.hpp"

namespace grt {

// Dense rational matrix, row major.
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_((size_t)rows * cols, Rational(0)) {}

    static QMatrix identity(int n) {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int i, int j) { return a_[(size_t)i * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

    friend QMatrix operator+(const QMatrix& x, const QMatrix& y) {
        QMatrix r(x.rows_, x.cols_);
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend QMatrix operator-(const QMatrix& x, const QMatrix& y) {
        QMatrix r(x.rows_, x.cols_);
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    friend QMatrix operator*(const QMatrix& x, const QMatrix& y) {
        if (x.cols_ != y.rows_) throw domain_error("matrix shape mismatch");
        QMatrix r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                if (x(i, k) == 0) continue;
                for (int j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    QMatrix scaled(const Rational& c) const {
        QMatrix r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
        return r;
    }
    friend bool operator==(const QMatrix& x, const QMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    bool is_zero() const {
        for (const auto& v : a_)
            if (v != 0) return false;
        return true;
    }

    QMatrix pow(int e) const {
        QMatrix r = identity(rows_);
        QMatrix b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

// In-place reduced row echelon form with a caller-chosen column order.
// Returns the pivot columns in elimination order.
inline std::vector<int> rref(QMatrix& m, const std::vector<int>& column_order) {
    std::vector<int> pivots;
    int row = 0;
    for (int cidx = 0; cidx < (int)column_order.size() && row < m.rows(); ++cidx) {
        int col = column_order[cidx];
        int pr = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m(i, col) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(row, j));
        Rational inv = Rational(1) / m(row, col);
        for (int j = 0; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::vector<int> rref(QMatrix& m) {
    std::vector<int> order(m.cols());
    std::iota(order.begin(), order.end(), 0);
    return rref(m, order);
}

inline int rank(QMatrix m) { return (int)rref(m).size(); }

// Basis of the right nullspace {x : m x = 0}, one column vector per basis
// element, computed with the given column elimination order.
inline std::vector<std::vector<Rational>> nullspace(QMatrix m,
                                                    const std::vector<int>& column_order) {
    std::vector<int> pivots = rref(m, column_order);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) {
            // pivot row r has 1 at pivots[r]; solve for it
            v[pivots[r]] = -m((int)r, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<std::vector<Rational>> nullspace(QMatrix m) {
    std::vector<int> order(m.cols());
    std::iota(order.begin(), order.end(), 0);
    return nullspace(std::move(m), order);
}

inline QMatrix inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw domain_error("inverse of non-square matrix");
    int n = m.rows();
    QMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto piv = rref(aug, order);
    if ((int)piv.size() != n) throw domain_error("matrix not invertible");
    QMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// Characteristic polynomial by Faddeev-LeVerrier: returns coefficients
// c[0..n] with p(x) = sum c[k] x^k, monic (c[n] = 1).
inline std::vector<Rational> char_poly(const QMatrix& m) {
    if (m.rows() != m.cols()) throw domain_error("char_poly of non-square matrix");
    int n = m.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    QMatrix mk = QMatrix::identity(n);  // M_1 = I
    for (int k = 1; k <= n; ++k) {
        mk = m * mk;
        Rational tr(0);
        for (int i = 0; i < n; ++i) tr += mk(i, i);
        Rational ck = -tr / Rational(k);
        c[n - k] = ck;
        for (int i = 0; i < n; ++i) mk(i, i) += ck;
    }
    return c;
}

// Sparse exact row-echelon accumulator over Q; rows are sorted
// (column, coeff) vectors. Used by the free-algebra quotient oracle.
class SparseEchelon {
public:
    using Row = std::vector<std::pair<int, Rational>>;

    explicit SparseEchelon(long work_budget = -1) : budget_(work_budget) {}

    // Reduce the row against current pivots and insert if nonzero.
    // Returns true if the row added a new pivot.
    bool insert(Row row) {
        reduce(row);
        if (row.empty()) return false;
        int lead = row.front().first;
        Rational inv = Rational(1) / row.front().second;
        for (auto& [c, v] : row) v *= inv;
        pivots_[lead] = std::move(row);
        return true;
    }

    void reduce(Row& row) const {
        while (!row.empty()) {
            auto it = pivots_.find(row.front().first);
            if (it == pivots_.end()) return;
            Rational f = row.front().second;
            row = axpy(row, it->second, -f);
            spend((long)it->second.size());
        }
    }

    int rank() const { return (int)pivots_.size(); }
    const std::map<int, Row>& pivot_rows() const { return pivots_; }
    bool has_pivot(int col) const { return pivots_.count(col) != 0; }

    static Row axpy(const Row& a, const Row& b, const Rational& f) {
        Row r;
        r.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
                r.push_back(a[i++]);
            } else if (i >= a.size() || b[j].first < a[i].first) {
                r.emplace_back(b[j].first, b[j].second * f);
                ++j;
            } else {
                Rational v = a[i].second + b[j].second * f;
                if (v != 0) r.emplace_back(a[i].first, v);
                ++i;
                ++j;
            }
        }
        return r;
    }

private:
    void spend(long units) const {
        if (budget_ < 0) return;
        spent_ += units;
        if (spent_ > budget_)
            throw resource_error("elimination work budget exceeded");
    }

    std::map<int, Row> pivots_;
    long budget_;
    mutable long spent_ = 0;
};

}  // namespace grt
