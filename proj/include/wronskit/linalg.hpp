#pragma once

// Small dense matrix helpers, scalar-generic. Everything here is sized for
// desk-scale problems (dimensions well under 100); exact when T is exact.

#include "wronskit/polynomial.hpp"
#include "wronskit/scalars.hpp"

#include <stdexcept>
#include <vector>

namespace wronskit {

template <class T>
using Mat = std::vector<std::vector<T>>;

template <class T>
Mat<T> mat_identity(std::size_t n) {
    Mat<T> m(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
    return m;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat<T> r(n, std::vector<T>(m, T(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == T(0)) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

template <class T>
std::vector<T> mat_vec(const Mat<T>& a, const std::vector<T>& x) {
    std::vector<T> r(a.size(), T(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
    return r;
}

template <class T>
Mat<T> mat_sub(Mat<T> a, const Mat<T>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
    return a;
}

template <class T>
Mat<T> mat_transpose(const Mat<T>& a) {
    if (a.empty()) return {};
    Mat<T> r(a[0].size(), std::vector<T>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

template <class T>
double mat_max_mag(const Mat<T>& a) {
    double m = 0;
    for (const auto& row : a)
        for (const T& v : row) m = std::max(m, mag_d(v));
    return m;
}

// Solve A X = B in place (A square). Throws on (numerically) singular A.
template <class T>
Mat<T> lu_solve(Mat<T> a, Mat<T> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("lu_solve: size mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = mag_d(a[col][col]);
        for (std::size_t r = col + 1; r < n; ++r)
            if (double m = mag_d(a[r][col]); m > best) { best = m; piv = r; }
        if (best == 0.0) {
            for (std::size_t r = col; r < n; ++r)
                if (a[r][col] != T(0)) { piv = r; best = 1.0; break; }
        }
        if (a[piv][col] == T(0)) throw std::runtime_error("lu_solve: singular matrix");
        if (piv != col) { std::swap(a[piv], a[col]); std::swap(b[piv], b[col]); }
        T inv = T(1) / a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == T(0)) continue;
            T f = a[r][col] * inv;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            for (std::size_t c = 0; c < b[r].size(); ++c) b[r][c] -= f * b[col][c];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        T inv = T(1) / a[i][i];
        for (std::size_t c = 0; c < b[i].size(); ++c) {
            T acc = b[i][c];
            for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * b[j][c];
            b[i][c] = acc * inv;
        }
    }
    return b;
}

template <class T>
std::vector<T> lu_solve_vec(const Mat<T>& a, const std::vector<T>& rhs) {
    Mat<T> b(rhs.size(), std::vector<T>(1));
    for (std::size_t i = 0; i < rhs.size(); ++i) b[i][0] = rhs[i];
    Mat<T> x = lu_solve(a, std::move(b));
    std::vector<T> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i][0];
    return r;
}

// Row echelon with partial pivoting; returns pivot column indices.
// rel_tol is interpreted relative to the largest entry (ignored for exact T).
template <class T>
std::vector<int> row_echelon(Mat<T>& a, double rel_tol = 0.0) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size(), cols = a[0].size();
    const double scale = mat_max_mag(a);
    const double thresh = scalar_traits<T>::is_exact ? 0.0 : rel_tol * (scale > 0 ? scale : 1.0);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        double best = mag_d(a[r][c]);
        for (std::size_t i = r + 1; i < rows; ++i)
            if (double m = mag_d(a[i][c]); m > best) { best = m; piv = i; }
        bool nonzero = scalar_traits<T>::is_exact ? [&] {
            for (std::size_t i = r; i < rows; ++i)
                if (a[i][c] != T(0)) { if (mag_d(a[piv][c]) == 0.0) piv = i; return true; }
            return false;
        }() : best > thresh;
        if (!nonzero) continue;
        if (piv != r) std::swap(a[piv], a[r]);
        T inv = T(1) / a[r][c];
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == T(0)) continue;
            T f = a[i][c] * inv;
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            a[i][c] = T(0);
        }
        pivots.push_back(int(c));
        ++r;
    }
    return pivots;
}

template <class T>
int mat_rank(Mat<T> a, double rel_tol = 1e-10) {
    return int(row_echelon(a, rel_tol).size());
}

// Basis of the right null space of A (columns of A index the unknowns).
template <class T>
std::vector<std::vector<T>> null_space(Mat<T> a, double rel_tol = 1e-10) {
    if (a.empty()) return {};
    const std::size_t cols = a[0].size();
    std::vector<int> pivots = row_echelon(a, rel_tol);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<T> v(cols, T(0));
        v[free_c] = T(1);
        for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
            // row pi has its pivot at column pivots[pi]
            v[pivots[pi]] = -a[pi][free_c] / a[pi][pivots[pi]];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// characteristic polynomial det(tI - A) by the Faddeev-LeVerrier recursion
template <class T>
Polynomial<T> char_poly(const Mat<T>& a) {
    const std::size_t n = a.size();
    std::vector<T> c(n + 1, T(0));
    c[n] = T(1);
    Mat<T> m = mat_identity<T>(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = mat_mul(a, m);
        T tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += m[i][i];
        T ck = -tr / T(long(k));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) m[i][i] += ck;
    }
    return Polynomial<T>(std::move(c));
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Real vec_norm(const std::vector<Complex>& v) {
    Real s(0);
    for (const Complex& z : v) s += norm(z);
    return sqrt(s);
}

}  // namespace wronskit
