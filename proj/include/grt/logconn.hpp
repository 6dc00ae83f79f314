#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "grt/laurent.hpp"
#include "grt/linalg.hpp"
#include "grt/padic.hpp"
#include "grt/series.hpp"

namespace grt {

// ---------------------------------------------------------------------------
// Rational spectra
// ---------------------------------------------------------------------------

// All integer divisors (positive and negative) of |n|, n != 0; guarded.
inline std::vector<Integer> integer_divisors(Integer n, size_t cap = 200000) {
    if (n < 0) n = -n;
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
            if (small.size() + large.size() > cap)
                throw resource_error("divisor enumeration exceeded its cap");
        }
        if (d > 2000000) throw resource_error("divisor enumeration exceeded its cap");
    }
    std::vector<Integer> out;
    for (const auto& d : small) out.push_back(d);
    for (auto it = large.rbegin(); it != large.rend(); ++it) out.push_back(*it);
    std::vector<Integer> signed_out;
    for (const auto& d : out) {
        signed_out.push_back(d);
        signed_out.push_back(-d);
    }
    return signed_out;
}

// Integer roots (with multiplicity) of a monic rational polynomial
// c[0] + c[1] x + ... + x^n; returns roots and the degree left over.
inline std::vector<std::pair<Integer, int>> integer_roots(std::vector<Rational> c) {
    std::vector<std::pair<Integer, int>> roots;
    auto eval_zero = [&](std::vector<Rational>& poly, const Rational& r) {
        Rational acc = 0;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * r + *it;
        return acc;
    };
    auto deflate = [&](std::vector<Rational>& poly, const Rational& r) {
        // synthetic division by (x - r)
        std::vector<Rational> q(poly.size() - 1);
        Rational carry = poly.back();
        for (int i = (int)poly.size() - 2; i >= 0; --i) {
            q[i] = carry;
            carry = poly[i] + carry * r;
        }
        poly = q;
    };
    // strip roots at zero
    int zero_mult = 0;
    while (c.size() > 1 && c[0] == 0) {
        c.erase(c.begin());
        ++zero_mult;
    }
    if (zero_mult) roots.emplace_back(Integer(0), zero_mult);
    while (c.size() > 1) {
        // common denominator
        Integer den = 1;
        for (const auto& q : c) den = den * q.get_den() / gcd(den, Integer(q.get_den()));
        Integer c0 = Integer(c[0].get_num()) * (den / Integer(c[0].get_den()));
        if (c0 == 0) break;  // handled above; defensive
        bool found = false;
        for (const Integer& d : integer_divisors(c0)) {
            Rational r{d};
            if (eval_zero(c, r) == 0) {
                int mult = 0;
                while (c.size() > 1 && eval_zero(c, r) == 0) {
                    deflate(c, r);
                    ++mult;
                }
                roots.emplace_back(d, mult);
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    return roots;
}

// Rational eigenvalues with multiplicities; spectrum_error when the
// characteristic polynomial does not split over Q.
inline std::vector<std::pair<Rational, int>> rational_eigenvalues(const QMatrix& m) {
    std::vector<Rational> c = char_poly(m);
    // scale x = y / L to make integer-monic: roots of q(y) = L^n p(y/L)
    Integer lc = 1;
    for (const auto& q : c) lc = lc * q.get_den() / gcd(lc, Integer(q.get_den()));
    int n = (int)c.size() - 1;
    std::vector<Rational> q(c.size());
    Integer lpow = 1;
    for (int k = n; k >= 0; --k) {
        q[k] = c[k] * Rational(lpow);
        lpow *= lc;
    }
    auto roots = integer_roots(q);
    int total = 0;
    std::vector<std::pair<Rational, int>> eigs;
    for (const auto& [y, mult] : roots) {
        Rational lambda = Rational(y) / Rational(lc);
        eigs.emplace_back(lambda, mult);
        total += mult;
    }
    if (total != n)
        throw spectrum_error("characteristic polynomial does not split over Q");
    std::sort(eigs.begin(), eigs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return eigs;
}

inline bool has_nonzero_integer_eigenvalue(const QMatrix& m) {
    std::vector<Rational> c = char_poly(m);
    Integer lc = 1;
    for (const auto& q : c) lc = lc * q.get_den() / gcd(lc, Integer(q.get_den()));
    int n = (int)c.size() - 1;
    std::vector<Rational> q(c.size());
    Integer lpow = 1;
    for (int k = n; k >= 0; --k) {
        q[k] = c[k] * Rational(lpow);
        lpow *= lc;
    }
    for (const auto& [y, mult] : integer_roots(q)) {
        if (y == 0) continue;
        Rational lambda = Rational(y) / Rational(lc);
        if (lambda.get_den() == 1) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// LogConnection
// ---------------------------------------------------------------------------

enum class ConnectionFlag { IntegrableConstant, Unipotent };

// d - sum_i Gamma_i dlog t_i with constant rational residue matrices.
class LogConnection {
public:
    LogConnection(int rank, std::vector<std::string> vars, std::vector<QMatrix> residues,
                  std::vector<ConnectionFlag> flags = {})
        : rank_(rank), vars_(std::move(vars)), residues_(std::move(residues)),
          flags_(std::move(flags)) {
        if ((int)residues_.size() != (int)vars_.size())
            throw domain_error("one residue matrix per variable required");
        for (const auto& g : residues_)
            if (g.rows() != rank_ || g.cols() != rank_)
                throw domain_error("residue matrix shape mismatch");
        if (has_flag(ConnectionFlag::IntegrableConstant)) {
            for (size_t i = 0; i < residues_.size(); ++i)
                for (size_t j = i + 1; j < residues_.size(); ++j)
                    if (!(residues_[i] * residues_[j] == residues_[j] * residues_[i]))
                        throw domain_error("integrable-constant flag: residues must commute");
        }
        if (has_flag(ConnectionFlag::Unipotent)) {
            for (const auto& g : residues_)
                if (!g.pow(rank_).is_zero())
                    throw domain_error("unipotent flag: residues must be nilpotent");
        }
    }

    int rank() const { return rank_; }
    int nvars() const { return (int)vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<QMatrix>& residues() const { return residues_; }
    const std::vector<ConnectionFlag>& flags() const { return flags_; }
    bool has_flag(ConnectionFlag f) const {
        return std::find(flags_.begin(), flags_.end(), f) != flags_.end();
    }

private:
    int rank_;
    std::vector<std::string> vars_;
    std::vector<QMatrix> residues_;
    std::vector<ConnectionFlag> flags_;
};

// ---------------------------------------------------------------------------
// Shearing: gauge normalization removing integer eigenvalue gaps
// ---------------------------------------------------------------------------

struct GaugeReport {
    LaurentMatrix gauge;            // invertible over the Laurent ring
    std::vector<QMatrix> residues;  // shifted residues after the gauge
    GaugeReport(int m, int nvars) : gauge(m, m, nvars) {}
};

namespace detail {

// columns of `sub` span a subspace; returns the matrix of `g` restricted to
// it (solves g * sub = sub * X).
inline QMatrix restrict_to(const QMatrix& g, const QMatrix& sub) {
    int m = sub.rows(), k = sub.cols();
    QMatrix rhs = g * sub;
    // solve sub * X = rhs column by column via rref of [sub | rhs]
    QMatrix aug(m, k + k);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < k; ++j) aug(i, j) = sub(i, j);
        for (int j = 0; j < k; ++j) aug(i, k + j) = rhs(i, j);
    }
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    auto piv = rref(aug, order);
    if ((int)piv.size() != k) throw domain_error("subspace basis is degenerate");
    for (int i = k; i < m; ++i)
        for (int j = 0; j < k; ++j)
            if (aug(i, k + j) != 0) throw domain_error("subspace not invariant");
    QMatrix x(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) x(i, j) = aug(i, k + j);
    return x;
}

inline QMatrix columns(const std::vector<std::vector<Rational>>& cols, int m) {
    QMatrix s(m, (int)cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < m; ++i) s(i, (int)j) = cols[j][i];
    return s;
}

}  // namespace detail

// Joint generalized eigenspace decomposition of commuting rational-spectrum
// matrices. Returns per-subspace (eigenvalue per matrix, ambient basis).
struct JointEigenspace {
    std::vector<Rational> eigenvalues;  // one per residue matrix
    QMatrix basis;                      // m x dim, columns span the subspace
};

inline std::vector<JointEigenspace> joint_generalized_eigenspaces(
    const std::vector<QMatrix>& mats, int m) {
    std::vector<JointEigenspace> spaces;
    {
        JointEigenspace all;
        all.basis = QMatrix::identity(m);
        spaces.push_back(std::move(all));
    }
    for (const auto& g : mats) {
        std::vector<JointEigenspace> next;
        for (const auto& sp : spaces) {
            QMatrix r = detail::restrict_to(g, sp.basis);
            auto eigs = rational_eigenvalues(r);
            for (const auto& [lambda, mult] : eigs) {
                // generalized eigenspace: ker (r - lambda)^dim
                int k = r.rows();
                QMatrix shifted = r;
                for (int i = 0; i < k; ++i) shifted(i, i) -= lambda;
                QMatrix pw = shifted.pow(k);
                auto ker = nullspace(pw);
                if ((int)ker.size() != mult)
                    throw domain_error("generalized eigenspace dimension mismatch");
                JointEigenspace child;
                child.eigenvalues = sp.eigenvalues;
                child.eigenvalues.push_back(lambda);
                child.basis = sp.basis * detail::columns(ker, k);
                next.push_back(std::move(child));
            }
        }
        spaces = std::move(next);
    }
    return spaces;
}

// Iteratively removes nonzero-integer eigenvalue differences: while some
// residue Gamma_i has eigenvalues lo < hi with hi - lo a positive integer,
// scale the joint subspaces carrying lo by t_i^(hi-lo). Step order is fixed:
// lowest variable index first, then the lexicographically smallest (lo, hi)
// pair.
inline GaugeReport shear(const LogConnection& conn) {
    int m = conn.rank();
    int r = conn.nvars();
    for (size_t i = 0; i < conn.residues().size(); ++i)
        for (size_t j = i + 1; j < conn.residues().size(); ++j)
            if (!(conn.residues()[i] * conn.residues()[j] ==
                  conn.residues()[j] * conn.residues()[i]))
                throw domain_error("shear needs commuting residues (integrability)");

    auto spaces = joint_generalized_eigenspaces(conn.residues(), m);

    // eigenvalue ledger per subspace, plus accumulated t-exponents
    int ns = (int)spaces.size();
    std::vector<std::vector<Rational>> lambda(ns);
    std::vector<std::vector<int>> shift(ns, std::vector<int>(r, 0));
    for (int s = 0; s < ns; ++s) lambda[s] = spaces[s].eigenvalues;

    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < r && !changed; ++i) {
            // collect (lo, hi) integer-separated eigenvalue pairs of Gamma_i
            std::optional<std::pair<Rational, Rational>> best;
            for (int s = 0; s < ns; ++s)
                for (int s2 = 0; s2 < ns; ++s2) {
                    Rational lo = lambda[s][i], hi = lambda[s2][i];
                    Rational diff = hi - lo;
                    if (diff.get_den() == 1 && diff > 0) {
                        auto cand = std::make_pair(lo, hi);
                        if (!best || cand < *best) best = cand;
                    }
                }
            if (!best) continue;
            int n = (int)Rational(best->second - best->first).get_num().get_si();
            for (int s = 0; s < ns; ++s) {
                if (lambda[s][i] == best->first) {
                    lambda[s][i] += n;
                    shift[s][i] += n;
                }
            }
            changed = true;
        }
    }

    // assemble P, D(t), the sheared residues, and the gauge P D P^-1
    QMatrix p(m, m);
    std::vector<int> col_space(m);
    {
        int col = 0;
        for (int s = 0; s < ns; ++s)
            for (int j = 0; j < spaces[s].basis.cols(); ++j) {
                for (int i = 0; i < m; ++i) p(i, col) = spaces[s].basis(i, j);
                col_space[col] = s;
                ++col;
            }
        if (col != m) throw domain_error("joint eigenspaces do not fill the space");
    }
    QMatrix pinv = inverse(p);

    GaugeReport rep(m, r);
    LaurentMatrix d(m, m, r);
    for (int c = 0; c < m; ++c) {
        Laurent::Exp e(r);
        for (int i = 0; i < r; ++i) e[i] = shift[col_space[c]][i];
        d(c, c) = Laurent::monomial(r, e, 1);
    }
    auto embed = [&](const QMatrix& q) {
        LaurentMatrix l(q.rows(), q.cols(), r);
        for (int i = 0; i < q.rows(); ++i)
            for (int j = 0; j < q.cols(); ++j)
                if (q(i, j) != 0) l(i, j) = Laurent(r, q(i, j));
        return l;
    };
    rep.gauge = embed(p) * d * embed(pinv);

    for (int i = 0; i < r; ++i) {
        // B_i in the joint basis, plus the integer shifts on the blocks
        QMatrix b = pinv * conn.residues()[i] * p;
        for (int c = 0; c < m; ++c) b(c, c) += Rational(shift[col_space[c]][i]);
        rep.residues.push_back(p * b * pinv);
    }

    // symbolic verification: Gamma'_i G = G Gamma_i + theta_i G
    for (int i = 0; i < r; ++i) {
        LaurentMatrix lhs = embed(rep.residues[i]) * rep.gauge;
        LaurentMatrix rhs = rep.gauge * embed(conn.residues()[i]) + rep.gauge.theta(i);
        if (!(lhs == rhs)) throw domain_error("internal: gauge verification failed");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Horizontal sections
// ---------------------------------------------------------------------------

// Basis of the joint kernel of the residues; under non-resonance these
// constants are exactly the horizontal sections.
inline std::vector<std::vector<Rational>> horizontal_sections(const LogConnection& conn) {
    for (const auto& g : conn.residues())
        if (has_nonzero_integer_eigenvalue(g))
            throw domain_error(
                "resonant residue (nonzero integer eigenvalue): shear the connection first");
    QMatrix stacked(conn.rank() * conn.nvars(), conn.rank());
    for (int i = 0; i < conn.nvars(); ++i)
        for (int a = 0; a < conn.rank(); ++a)
            for (int b = 0; b < conn.rank(); ++b)
                stacked(i * conn.rank() + a, b) = conn.residues()[i](a, b);
    return nullspace(std::move(stacked));
}

// ---------------------------------------------------------------------------
// Tangential points and parallel transport
// ---------------------------------------------------------------------------

struct TangentialCoordinate {
    PadicScalar scalar;      // point coordinate or tangential scale
    bool tangential = false;
};

struct TangentialPoint {
    std::vector<TangentialCoordinate> coords;

    static TangentialPoint points(std::vector<PadicScalar> xs) {
        TangentialPoint p;
        for (auto& x : xs) p.coords.push_back({std::move(x), false});
        return p;
    }
    static TangentialPoint tangential(std::vector<PadicScalar> xs) {
        TangentialPoint p;
        for (auto& x : xs) p.coords.push_back({std::move(x), true});
        return p;
    }
};

using PadicStMatrix = std::vector<std::vector<PadicStScalar>>;

inline PadicStMatrix padic_st_identity(int m) {
    PadicStMatrix id(m, std::vector<PadicStScalar>(m));
    for (int i = 0; i < m; ++i) id[i][i] = PadicStScalar(PadicScalar(1L));
    return id;
}

inline PadicStMatrix padic_st_mul(const PadicStMatrix& a, const PadicStMatrix& b) {
    int m = (int)a.size();
    PadicStMatrix r(m, std::vector<PadicStScalar>(m));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < m; ++j)
                r[i][j] = r[i][j] + a[i][k] * b[k][j];
        }
    return r;
}

// prod_i exp(N_i log(to_i / from_i)); tangential scales enter the ratio
// directly (the divergent part is stripped by the branch).
inline PadicStMatrix transport(const LogConnection& conn, const TangentialPoint& from,
                               const TangentialPoint& to) {
    if (!conn.has_flag(ConnectionFlag::Unipotent))
        throw domain_error("transport needs the unipotent flag");
    if ((int)from.coords.size() != conn.nvars() || (int)to.coords.size() != conn.nvars())
        throw domain_error("transport: coordinate count mismatch");
    int m = conn.rank();
    PadicStMatrix out = padic_st_identity(m);
    for (int i = 0; i < conn.nvars(); ++i) {
        const PadicScalar& x = from.coords[i].scalar;
        const PadicScalar& y = to.coords[i].scalar;
        if (x.is_zero() || y.is_zero()) throw domain_error("transport: zero coordinate");
        PadicStScalar s = iwasawa_log(y) - iwasawa_log(x);
        // exp(N_i s): nilpotent, so the sum is finite
        PadicStMatrix factor = padic_st_identity(m);
        PadicStMatrix npow = padic_st_identity(m);
        Rational fact = 1;
        QMatrix n = conn.residues()[i];
        PadicStScalar spow(PadicScalar(1L));
        for (int k = 1; k < m; ++k) {
            fact *= k;
            spow = spow * s;
            // npow = N^k over Q embedded
            QMatrix nk = n.pow(k);
            if (nk.is_zero()) break;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    if (nk(a, b) == 0) continue;
                    factor[a][b] =
                        factor[a][b] + spow * PadicStScalar(PadicScalar(nk(a, b) / fact));
                }
        }
        out = padic_st_mul(out, factor);
    }
    return out;
}

// The G_m Frobenius comparison series prod_i exp(e_i log(y_i^(1-p)/x_i^(1-p)))
// with the branch specialized at l(p) = 0; endpoints must be units.
inline TruncatedSeries<PadicScalar> frobenius_gm(const std::vector<std::string>& symbols,
                                                 const TangentialPoint& from,
                                                 const TangentialPoint& to, long p, int cap) {
    if (from.coords.size() != symbols.size() || to.coords.size() != symbols.size())
        throw domain_error("frobenius_gm: coordinate count mismatch");
    AlphabetPtr alpha = make_alphabet(symbols);
    using PS = TruncatedSeries<PadicScalar>;
    PS out = PS::unit(alpha, cap);
    for (size_t i = 0; i < symbols.size(); ++i) {
        const PadicScalar& x = from.coords[i].scalar;
        const PadicScalar& y = to.coords[i].scalar;
        if (x.is_zero() || y.is_zero()) throw domain_error("frobenius_gm: zero coordinate");
        if (x.p() != p || y.p() != p) throw domain_error("frobenius_gm: mismatched primes");
        if (x.valuation() != 0 || y.valuation() != 0)
            throw domain_error("frobenius_gm: coordinates must be units (good reduction)");
        PadicStScalar lg = (iwasawa_log(y) - iwasawa_log(x)) * PadicStScalar(PadicScalar(1 - p));
        PadicScalar w = specialize_lp(lg, PadicScalar());
        PS arg(alpha, cap);
        arg.add_term(Word{(uint8_t)i}, w);
        out = out * exp_series(arg);
    }
    return out;
}

}  // namespace grt
