#pragma once

// Ramification sequences, Schubert problems, osculating flags, spaces of
// polynomials in canonical echelon form, and the degree bookkeeping of the
// Wronski map.

#include "wronskit/linalg.hpp"
#include "wronskit/polynomial.hpp"
#include "wronskit/roots.hpp"
#include "wronskit/shapes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wronskit {

// a point of RP^1: a real number or infinity
struct RP1Point {
    double value = 0;
    bool inf = false;
    static RP1Point infinity() { return {0, true}; }
    bool operator==(const RP1Point&) const = default;
};

// 0 <= a_0 < a_1 < ... < a_n <= d
struct RamificationSeq {
    std::vector<int> a;
    int n = 0, d = 0;

    RamificationSeq() = default;
    RamificationSeq(std::vector<int> seq, int n_, int d_) : a(std::move(seq)), n(n_), d(d_) {
        if (int(a.size()) != n + 1) throw std::invalid_argument("ramification sequence needs n+1 terms");
        for (int i = 0; i <= n; ++i) {
            if (a[i] < 0 || a[i] > d) throw std::invalid_argument("ramification entry out of range");
            if (i && a[i] <= a[i - 1]) throw std::invalid_argument("ramification sequence not strictly increasing");
        }
    }
    static RamificationSeq unramified(int n, int d) {
        std::vector<int> s(n + 1);
        for (int i = 0; i <= n; ++i) s[i] = i;
        return {std::move(s), n, d};
    }
    // the unique sequence of codimension 1: 0 < 1 < ... < n-1 < n+1
    static RamificationSeq iota(int n, int d) {
        RamificationSeq s = unramified(n, d);
        s.a[n] = n + 1;
        return s;
    }
    bool operator==(const RamificationSeq&) const = default;
};

inline int codim(const RamificationSeq& s) {
    int c = 0;
    for (int i = 0; i <= s.n; ++i) c += s.a[i] - i;
    return c;
}

// dictionary of Eq. lambda(a): a_n - n >= ... >= a_1 - 1 >= a_0
inline Partition partition_of(const RamificationSeq& s) {
    std::vector<int> p(s.n + 1);
    for (int i = 0; i <= s.n; ++i) p[i] = s.a[s.n - i] - (s.n - i);
    return Partition(std::move(p));
}
inline RamificationSeq ramification_of(const Partition& lambda, int n, int d) {
    std::vector<int> a(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = lambda.row(n - i) + i;
    return RamificationSeq(std::move(a), n, d);
}

struct SchubertProblem {
    int n = 0, d = 0;
    std::vector<std::pair<RamificationSeq, std::optional<RP1Point>>> conditions;

    int total_codim() const {
        int t = 0;
        for (const auto& c : conditions) t += codim(c.first);
        return t;
    }
    bool is_complete() const { return total_codim() == (n + 1) * (d - n); }
};

// compact form "G(1,3): i@-1 i@0 i@1 i@0.31"; named sequences "0,2@1.5";
// a token without @point leaves the point unset; "inf" is the point at infinity
SchubertProblem parse_schubert_problem(const std::string& text);
std::string format_schubert_problem(const SchubertProblem& p);

// F_i(s) = span{ (t-s)^d, ..., (t-s)^{d-i+1} }; s = infinity gives
// span{ 1, t, ..., t^{i-1} } under the coefficient-reversal convention
struct OsculatingFlag {
    int d = 0;
    RP1Point s;

    OsculatingFlag(int d_, RP1Point s_) : d(d_), s(s_) {}

    template <class T>
    std::vector<Polynomial<T>> basis(int i) const {
        std::vector<Polynomial<T>> out;
        out.reserve(i);
        if (s.inf) {
            for (int k = 0; k < i; ++k) out.push_back(Polynomial<T>::monomial(k));
        } else {
            Polynomial<T> lin{T(-s.value), T(1)};
            std::vector<Polynomial<T>> powers(d + 1);
            powers[0] = Polynomial<T>::one();
            for (int k = 1; k <= d; ++k) powers[k] = powers[k - 1] * lin;
            for (int k = 0; k < i; ++k) out.push_back(powers[d - k]);
        }
        return out;
    }
};

// (n+1)-dimensional subspace of degree-<=d polynomials in reduced echelon
// form: f_i monic of degree d-n+i with zero coefficient at the other pivot
// degrees d-n..d. Membership in the big cell is part of the invariant.
template <class T>
struct PolySpace {
    int n = 0, d = 0;
    std::vector<Polynomial<T>> basis;  // ascending pivot degree

    PolySpace() = default;
    PolySpace(int n_, int d_, std::vector<Polynomial<T>> echelon_basis)
        : n(n_), d(d_), basis(std::move(echelon_basis)) {}

    bool operator==(const PolySpace& o) const { return n == o.n && d == o.d && basis == o.basis; }
};

// Reduce a spanning set to canonical echelon form. Returns nothing if the
// span fails to be (n+1)-dimensional with pivots at the top degrees
// (i.e. is outside the big cell).
template <class T>
std::optional<PolySpace<T>> make_poly_space(int n, int d, const std::vector<Polynomial<T>>& span,
                                            double rel_tol = 1e-9) {
    if (int(span.size()) != n + 1) return std::nullopt;
    Mat<T> m(n + 1, std::vector<T>(d + 1, T(0)));
    for (int i = 0; i <= n; ++i) {
        if (span[i].degree() > d) return std::nullopt;
        for (int k = 0; k <= span[i].degree(); ++k)
            m[i][d - k] = span[i].coeff(k);  // columns ordered by descending degree
    }
    std::vector<int> piv = row_echelon(m, rel_tol);
    if (int(piv.size()) != n + 1) return std::nullopt;
    for (int i = 0; i <= n; ++i)
        if (piv[i] != i) return std::nullopt;  // pivot degrees must be d, d-1, ..., d-n
    std::vector<Polynomial<T>> basis(n + 1);
    for (int i = 0; i <= n; ++i) {
        // row i has pivot at degree d-i; report ascending pivot degree
        int r = n - i;
        std::vector<T> c(d + 1 - r, T(0));
        T inv = T(1) / m[r][piv[r]];
        for (int col = piv[r]; col <= d; ++col) c[d - col] = m[r][col] * inv;
        basis[i] = Polynomial<T>(std::move(c));
    }
    return PolySpace<T>(n, d, std::move(basis));
}

inline PolySpace<Complex> to_complex_space(const PolySpace<Rat>& p) {
    std::vector<Polynomial<Complex>> b;
    b.reserve(p.basis.size());
    for (const auto& f : p.basis) b.push_back(to_complex_poly(f));
    return PolySpace<Complex>(p.n, p.d, std::move(b));
}
inline PolySpace<Complex> to_complex_space(const PolySpace<Complex>& p) { return p; }

template <class T>
Polynomial<T> space_wronskian(const PolySpace<T>& p) {
    return wronskian(p.basis);
}

// orders of vanishing of P at s (finite or infinite)
template <class T>
RamificationSeq ramification(const PolySpace<T>& p, const T& s, double rel_tol = 1e-24) {
    Mat<T> m(p.n + 1, std::vector<T>(p.d + 1, T(0)));
    for (int i = 0; i <= p.n; ++i) {
        Polynomial<T> sh = p.basis[i].shift(s);  // coefficients of (t-s)^k after t -> t+s
        for (int k = 0; k <= sh.degree(); ++k) m[i][k] = sh.coeff(k);
    }
    std::vector<int> piv = row_echelon(m, rel_tol);
    if (int(piv.size()) != p.n + 1)
        throw std::runtime_error("ramification: degenerate basis");
    return RamificationSeq(std::move(piv), p.n, p.d);
}

template <class T>
RamificationSeq ramification_at_infinity(const PolySpace<T>& p, double rel_tol = 1e-24) {
    std::vector<Polynomial<T>> rev;
    rev.reserve(p.basis.size());
    for (const auto& f : p.basis) rev.push_back(f.reverse(p.d));
    auto q = make_poly_space<T>(p.n, p.d, rev, 1e-9);
    if (!q) {
        // reversal may leave the big cell; fall back to raw order count at 0
        Mat<T> m(p.n + 1, std::vector<T>(p.d + 1, T(0)));
        for (int i = 0; i <= p.n; ++i)
            for (int k = 0; k <= rev[i].degree(); ++k) m[i][k] = rev[i].coeff(k);
        std::vector<int> piv = row_echelon(m, rel_tol);
        return RamificationSeq(std::move(piv), p.n, p.d);
    }
    return ramification(*q, T(0), rel_tol);
}

template <class T>
bool in_schubert_variety(const PolySpace<T>& p, const RamificationSeq& a, const OsculatingFlag& flag,
                         double rel_tol = 1e-9) {
    if (a.n != p.n || a.d != p.d || flag.d != p.d)
        throw std::invalid_argument("in_schubert_variety: incompatible ambients");
    for (int j = 0; j <= p.n; ++j) {
        int fi = p.d + 1 - a.a[j];
        if (fi <= 0) continue;  // empty condition
        std::vector<Polynomial<T>> fb = flag.basis<T>(fi);
        Mat<T> m;
        for (const auto& f : p.basis) {
            std::vector<T> row(p.d + 1, T(0));
            for (int k = 0; k <= f.degree(); ++k) row[k] = f.coeff(k);
            m.push_back(std::move(row));
        }
        for (const auto& f : fb) {
            std::vector<T> row(p.d + 1, T(0));
            for (int k = 0; k <= f.degree(); ++k) row[k] = f.coeff(k);
            m.push_back(std::move(row));
        }
        int rank = mat_rank(m, rel_tol);
        int dim_int = (p.n + 1) + fi - rank;
        if (dim_int < p.n + 1 - j) return false;
    }
    return true;
}

struct PluckerReport {
    int total = 0;
    int dim = 0;
    std::vector<std::pair<Complex, RamificationSeq>> points;
    bool matches() const { return total == dim; }
};

// locate the roots of Wr(P) and sum the local ramification codimensions
template <class T>
PluckerReport plucker_check(const PolySpace<T>& p) {
    for (int i = 0; i <= p.n; ++i)
        if (p.basis[i].degree() != p.d - p.n + i)
            throw std::invalid_argument("plucker_check: space not in the big cell");
    PolySpace<Complex> pc = to_complex_space(p);
    Polynomial<Complex> w = space_wronskian(pc);
    PluckerReport rep;
    rep.dim = (p.n + 1) * (p.d - p.n);
    RootMultiset rm = find_roots(w);
    for (const auto& [z, mult] : rm.roots) {
        RamificationSeq a = ramification(pc, z, 1e-20);
        rep.total += codim(a);
        rep.points.emplace_back(z, a);
    }
    return rep;
}

// --- enumerative degrees --------------------------------------------------

// Schubert's formula for the degree of the Wronski map
long degree_iota(int n, int d);

// number of points of the Schubert problem, by iterated Littlewood-Richardson
// expansion in the cohomology of G(n,d)
long schubert_count(const SchubertProblem& problem);

struct incomplete_problem_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// topological degree of the real Wronski map: the sign statistic over SYT of
// the (n+1) x (d-n) rectangle, cross-checked against the closed formula.
// The sign is anchored to the row-reading filling and is convention-dependent;
// the absolute value is not.
long real_degree(int n, int d);

// the closed-formula side on its own (0 for odd d)
BigInt real_degree_formula(int n, int d);

// Littlewood-Richardson coefficient c^nu_{mu,lambda}
long lr_coefficient(const Partition& mu, const Partition& lambda, const Partition& nu);

}  // namespace wronskit
