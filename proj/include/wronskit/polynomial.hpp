#pragma once

// Univariate polynomials over an exact rational or multiprecision complex
// scalar, plus quasi-polynomials e^{bt} g(t). Dense ascending-degree
// coefficients; the zero polynomial has an empty coefficient list.

#include "wronskit/scalars.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wronskit {

template <class T>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial one() { return constant(T(1)); }
    static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
    // t^k
    static Polynomial monomial(int k, T v = T(1)) {
        std::vector<T> c(k + 1, T(0));
        c[k] = std::move(v);
        return Polynomial(std::move(c));
    }
    static Polynomial from_roots(const std::vector<T>& roots) {
        Polynomial p = one();
        for (const T& r : roots) p *= Polynomial{T(-r), T(1)};
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for the zero polynomial
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(int k) const { return (k >= 0 && k < int(c_.size())) ? c_[k] : T(0); }
    const T& lc() const {
        if (c_.empty()) throw std::invalid_argument("lc of zero polynomial");
        return c_.back();
    }

    template <class U>
    U eval(const U& x) const {
        U acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + scalar_cast<U>(c_[i]);
        return acc;
    }
    T operator()(const T& x) const { return eval<T>(x); }

    Polynomial derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(long(i));
        return Polynomial(std::move(d));
    }
    Polynomial derivative(int order) const {
        Polynomial p = *this;
        for (int i = 0; i < order; ++i) p = p.derivative();
        return p;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial& operator*=(const T& s) {
        for (T& v : c_) v *= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (T& v : a.c_) v = -v;
        return a;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial monic() const {
        if (is_zero()) throw std::invalid_argument("monic of zero polynomial");
        Polynomial p = *this;
        T inv = T(1) / c_.back();
        for (T& v : p.c_) v *= inv;
        p.c_.back() = T(1);
        return p;
    }
    bool is_monic() const { return !is_zero() && c_.back() == T(1); }

    // f(t + s), in-place synthetic Taylor shift
    Polynomial shift(const T& s) const {
        if (is_zero()) return zero();
        std::vector<T> c = c_;
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = c.size() - 1; j > i; --j) c[j - 1] += s * c[j];
        return Polynomial(std::move(c));
    }

    // f(a*t + b)
    Polynomial compose_affine(const T& a, const T& b) const {
        Polynomial acc;  // Horner in the argument polynomial
        Polynomial arg{b, a};
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * arg + constant(c_[i]);
        return acc;
    }

    // t^deg * f(1/t); pads to `deg` (>= degree of f)
    Polynomial reverse(int deg) const {
        if (deg < degree()) throw std::invalid_argument("reverse: deg too small");
        std::vector<T> r(deg + 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[deg - i] = c_[i];
        return Polynomial(std::move(r));
    }

    // drop trailing coefficients that are numerically negligible at `scale`
    Polynomial chop(double scale) const {
        std::vector<T> c = c_;
        while (!c.empty() && scalar_traits<T>::is_zero(c.back(), scale)) c.pop_back();
        return Polynomial(std::move(c));
    }

    double max_coeff_mag() const {
        double m = 0;
        for (const T& v : c_) m = std::max(m, mag_d(v));
        return m;
    }

    std::pair<Polynomial, Polynomial> divrem(const Polynomial& g) const {
        if (g.is_zero()) throw std::invalid_argument("division by zero polynomial");
        Polynomial r = *this;
        if (r.degree() < g.degree()) return {zero(), r};
        std::vector<T> q(r.degree() - g.degree() + 1, T(0));
        T glc_inv = T(1) / g.lc();
        for (int k = r.degree() - g.degree(); k >= 0; --k) {
            T f = r.coeff(g.degree() + k) * glc_inv;
            if (f == T(0)) continue;
            q[k] = f;
            Polynomial sub = g * f;
            // subtract sub * t^k
            std::vector<T> shifted(sub.c_.size() + k, T(0));
            for (std::size_t i = 0; i < sub.c_.size(); ++i) shifted[i + k] = sub.c_[i];
            r -= Polynomial(std::move(shifted));
        }
        return {Polynomial(std::move(q)), r};
    }

    std::string str() const {
        std::ostringstream os;
        if (is_zero()) return "0";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) os << " + ";
            os << "(" << c_[i] << ")";
            if (i == 1) os << "*t";
            if (i > 1) os << "*t^" << i;
        }
        return os.str();
    }

  private:
    template <class U, class S>
    static U scalar_cast(const S& v) {
        if constexpr (std::is_same_v<U, S>) return v;
        else if constexpr (std::is_same_v<S, Rat> && std::is_same_v<U, Complex>) return to_complex(v);
        else if constexpr (std::is_same_v<S, Rat> && std::is_same_v<U, CDouble>) return to_cdouble(v);
        else if constexpr (std::is_same_v<S, Rat> && std::is_same_v<U, Real>) return to_real(v);
        else if constexpr (std::is_same_v<S, Complex> && std::is_same_v<U, CDouble>) return to_cdouble(v);
        else if constexpr (std::is_same_v<S, CDouble> && std::is_same_v<U, Complex>) return to_complex(v);
        else return U(v);
    }

    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }

    std::vector<T> c_;
};

// explicit scalar-kind conversions (never implicit)
inline Polynomial<Complex> to_complex_poly(const Polynomial<Rat>& p) {
    std::vector<Complex> c;
    c.reserve(p.coeffs().size());
    for (const Rat& q : p.coeffs()) c.push_back(to_complex(q));
    return Polynomial<Complex>(std::move(c));
}
inline Polynomial<Complex> to_complex_poly(const Polynomial<CDouble>& p) {
    std::vector<Complex> c;
    c.reserve(p.coeffs().size());
    for (const CDouble& q : p.coeffs()) c.push_back(to_complex(q));
    return Polynomial<Complex>(std::move(c));
}
inline Polynomial<Complex> to_complex_poly(const Polynomial<Complex>& p) { return p; }
inline Polynomial<CDouble> to_cdouble_poly(const Polynomial<Complex>& p) {
    std::vector<CDouble> c;
    c.reserve(p.coeffs().size());
    for (const Complex& q : p.coeffs()) c.push_back(to_cdouble(q));
    return Polynomial<CDouble>(std::move(c));
}
inline Polynomial<CDouble> to_cdouble_poly(const Polynomial<Rat>& p) {
    std::vector<CDouble> c;
    c.reserve(p.coeffs().size());
    for (const Rat& q : p.coeffs()) c.push_back(to_cdouble(q));
    return Polynomial<CDouble>(std::move(c));
}

// determinant of a small matrix of polynomials by cofactor expansion
template <class T>
Polynomial<T> poly_matrix_det(const std::vector<std::vector<Polynomial<T>>>& m) {
    const std::size_t k = m.size();
    if (k == 0) return Polynomial<T>::one();
    if (k == 1) return m[0][0];
    Polynomial<T> det;
    for (std::size_t i = 0; i < k; ++i) {
        if (m[i][0].is_zero()) continue;
        std::vector<std::vector<Polynomial<T>>> minor;
        minor.reserve(k - 1);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == i) continue;
            minor.emplace_back(m[r].begin() + 1, m[r].end());
        }
        Polynomial<T> term = m[i][0] * poly_matrix_det(minor);
        if (i % 2) det -= term;
        else det += term;
    }
    return det;
}

// Wr(f_0,...,f_k) = det(f_i^{(j)})
template <class T>
Polynomial<T> wronskian(const std::vector<Polynomial<T>>& fs) {
    if (fs.empty()) throw std::invalid_argument("wronskian of empty list");
    const std::size_t k = fs.size();
    std::vector<std::vector<Polynomial<T>>> m(k, std::vector<Polynomial<T>>(k));
    for (std::size_t i = 0; i < k; ++i) {
        m[i][0] = fs[i];
        for (std::size_t j = 1; j < k; ++j) m[i][j] = m[i][j - 1].derivative();
    }
    return poly_matrix_det(m);
}

// leading coefficient of the Wronskian of monomials t^{m_0},...,t^{m_k}
inline long wronskian_monomial_constant(const std::vector<int>& degs) {
    long c = 1;
    for (std::size_t i = 0; i < degs.size(); ++i)
        for (std::size_t j = i + 1; j < degs.size(); ++j) c *= (degs[j] - degs[i]);
    return c;
}

// dense determinant with partial pivoting; exact when T is exact
template <class T>
T dense_det(std::vector<std::vector<T>> a) {
    const std::size_t n = a.size();
    T det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = mag_d(a[col][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double m = mag_d(a[r][col]);
            if (m > best) { best = m; piv = r; }
        }
        if (best == 0.0) {
            // double-range underflow can hide an exact nonzero pivot
            for (std::size_t r = col; r < n; ++r)
                if (a[r][col] != T(0)) { piv = r; break; }
        }
        if (a[piv][col] == T(0)) return T(0);
        if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
        det *= a[col][col];
        T inv = T(1) / a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == T(0)) continue;
            T f = a[r][col] * inv;
            for (std::size_t cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
        }
    }
    return det;
}

// Sylvester matrix of f (degree m) and g (degree n): (m+n) square
template <class T>
std::vector<std::vector<T>> sylvester_matrix(const Polynomial<T>& f, const Polynomial<T>& g) {
    const int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) throw std::invalid_argument("sylvester of zero polynomial");
    const int N = m + n;
    std::vector<std::vector<T>> s(N, std::vector<T>(N, T(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s[r][r + i] = f.coeff(m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s[n + r][r + i] = g.coeff(n - i);
    return s;
}

// Res(f,g) = prod over roots (alpha_i - beta_j); requires monic f and g.
template <class T>
T resultant(const Polynomial<T>& f, const Polynomial<T>& g) {
    if (!f.is_monic() || !g.is_monic())
        throw std::invalid_argument("resultant requires monic inputs; normalize first");
    if (f.degree() == 0 || g.degree() == 0) return T(1);
    return dense_det(sylvester_matrix(f, g));
}

// Discr(f) = prod_{i<j} (alpha_i - alpha_j)^2; requires monic f.
template <class T>
T discriminant(const Polynomial<T>& f) {
    if (!f.is_monic())
        throw std::invalid_argument("discriminant requires a monic input; normalize first");
    const int m = f.degree();
    if (m <= 1) return T(1);
    T res = dense_det(sylvester_matrix(f, f.derivative()));
    return (m * (m - 1) / 2) % 2 ? T(-res) : res;
}

// --- quasi-polynomials ---------------------------------------------------

// e^{b t} g(t); g must be nonzero
template <class T>
struct QuasiPolynomial {
    T exponent{};
    Polynomial<T> poly;

    QuasiPolynomial() : poly(Polynomial<T>::one()) {}
    QuasiPolynomial(T b, Polynomial<T> g) : exponent(std::move(b)), poly(std::move(g)) {
        if (poly.is_zero()) throw std::invalid_argument("quasi-polynomial with zero polynomial part");
    }

    // d/dt (e^{bt} g) = e^{bt} (b g + g')
    QuasiPolynomial derivative() const {
        return QuasiPolynomial(exponent, poly * exponent + poly.derivative());
    }
};

namespace detail {
inline Complex exp_scalar(const Complex& x) { return exp(x); }
inline CDouble exp_scalar(const CDouble& x) { return std::exp(x); }
inline Rat exp_scalar(const Rat& x) {
    if (x != 0)
        throw std::invalid_argument(
            "discrete wronskian over exact rationals requires all exponents zero");
    return Rat(1);
}
}  // namespace detail

// Wr(f_0,...,f_n) for quasi-polynomials: exponent sum(b_i), polynomial part
// the determinant with the row factors e^{b_i t} extracted.
template <class T>
QuasiPolynomial<T> wronskian(const std::vector<QuasiPolynomial<T>>& fs) {
    if (fs.empty()) throw std::invalid_argument("wronskian of empty list");
    const std::size_t k = fs.size();
    T bsum(0);
    std::vector<std::vector<Polynomial<T>>> m(k, std::vector<Polynomial<T>>(k));
    for (std::size_t i = 0; i < k; ++i) {
        bsum += fs[i].exponent;
        Polynomial<T> g = fs[i].poly;
        for (std::size_t j = 0; j < k; ++j) {
            m[i][j] = g;
            g = g * fs[i].exponent + g.derivative();  // may legitimately vanish
        }
    }
    return QuasiPolynomial<T>(bsum, poly_matrix_det(m));
}

// det( f_i(t + j h) ): exponent sum(b_i), polynomial part after extracting
// e^{b_i t} from row i (each shifted entry contributes a constant e^{b_i j h}).
template <class T>
QuasiPolynomial<T> discrete_wronskian(const std::vector<QuasiPolynomial<T>>& fs, const T& h) {
    if (fs.empty()) throw std::invalid_argument("discrete wronskian of empty list");
    const std::size_t k = fs.size();
    T bsum(0);
    std::vector<std::vector<Polynomial<T>>> m(k, std::vector<Polynomial<T>>(k));
    for (std::size_t i = 0; i < k; ++i) {
        bsum += fs[i].exponent;
        for (std::size_t j = 0; j < k; ++j) {
            T step = h * T(long(j));
            m[i][j] = fs[i].poly.shift(step) * detail::exp_scalar(T(fs[i].exponent * step));
        }
    }
    return QuasiPolynomial<T>(bsum, poly_matrix_det(m));
}

// --- JSON ----------------------------------------------------------------

inline nlohmann::json poly_to_json(const Polynomial<Rat>& p) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Rat& q : p.coeffs()) coeffs.push_back(q.str());
    return {{"kind", "rational"}, {"coeffs", coeffs}};
}
inline nlohmann::json poly_to_json(const Polynomial<Complex>& p) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Complex& z : p.coeffs())
        coeffs.push_back({z.real().convert_to<double>(), z.imag().convert_to<double>()});
    return {{"kind", "complex"}, {"coeffs", coeffs}};
}

inline Polynomial<Rat> rat_poly_from_json(const nlohmann::json& j) {
    if (j.at("kind") != "rational") throw std::invalid_argument("expected rational polynomial");
    std::vector<Rat> c;
    for (const auto& v : j.at("coeffs")) c.emplace_back(v.get<std::string>());
    return Polynomial<Rat>(std::move(c));
}
inline Polynomial<Complex> complex_poly_from_json(const nlohmann::json& j) {
    if (j.at("kind") != "complex") throw std::invalid_argument("expected complex polynomial");
    std::vector<Complex> c;
    for (const auto& v : j.at("coeffs")) c.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return Polynomial<Complex>(std::move(c));
}

}  // namespace wronskit
