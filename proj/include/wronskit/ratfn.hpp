#pragma once

// Rational functions as explicit numerator/denominator pairs (no gcd
// cancellation) and scalar linear differential operators with rational
// coefficients. Operator applications stay exact polynomial identities over
// cleared denominators.

#include "wronskit/polynomial.hpp"

#include <vector>

namespace wronskit {

template <class T>
struct RationalFn {
    Polynomial<T> num, den;

    RationalFn() : num(), den(Polynomial<T>::one()) {}
    explicit RationalFn(Polynomial<T> n) : num(std::move(n)), den(Polynomial<T>::one()) {}
    RationalFn(Polynomial<T> n, Polynomial<T> d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw std::invalid_argument("rational function with zero denominator");
    }

    bool is_zero() const { return num.is_zero(); }

    RationalFn operator+(const RationalFn& o) const {
        return {num * o.den + o.num * den, den * o.den};
    }
    RationalFn operator-(const RationalFn& o) const {
        return {num * o.den - o.num * den, den * o.den};
    }
    RationalFn operator*(const RationalFn& o) const { return {num * o.num, den * o.den}; }
    RationalFn operator-() const { return {-num, den}; }

    RationalFn derivative() const {
        return {num.derivative() * den - num * den.derivative(), den * den};
    }

    T eval(const T& x) const { return num.eval(x) / den.eval(x); }
};

// ln'(a/b) = a'/a - b'/b as the rational function (a'b - ab')/(ab)
template <class T>
RationalFn<T> log_derivative_ratio(const Polynomial<T>& a, const Polynomial<T>& b) {
    return {a.derivative() * b - a * b.derivative(), a * b};
}

// sum c_k(t) (d/dt)^k with rational coefficients
template <class T>
struct ScalarDiffOp {
    std::vector<RationalFn<T>> coeffs;  // index = derivative order

    int order() const { return int(coeffs.size()) - 1; }

    static ScalarDiffOp identity() {
        ScalarDiffOp op;
        op.coeffs = {RationalFn<T>(Polynomial<T>::one())};
        return op;
    }
    // d/dt - L
    static ScalarDiffOp first_order(const RationalFn<T>& L) {
        ScalarDiffOp op;
        op.coeffs = {-L, RationalFn<T>(Polynomial<T>::one())};
        return op;
    }

    // composition this ∘ other (apply `other` first), by the Leibniz rule
    ScalarDiffOp compose(const ScalarDiffOp& other) const {
        ScalarDiffOp out;
        out.coeffs.assign(order() + other.order() + 1, RationalFn<T>());
        for (int j = 0; j <= order(); ++j) {
            if (coeffs[j].is_zero()) continue;
            for (int k = 0; k <= other.order(); ++k) {
                RationalFn<T> b = other.coeffs[k];
                long binom = 1;
                for (int r = 0; r <= j; ++r) {
                    if (!b.is_zero())
                        out.coeffs[j - r + k] =
                            out.coeffs[j - r + k] + coeffs[j] * b * RationalFn<T>(Polynomial<T>::constant(T(binom)));
                    binom = binom * (j - r) / (r + 1);
                    b = b.derivative();
                }
            }
        }
        return out;
    }

    RationalFn<T> apply(const RationalFn<T>& f) const {
        RationalFn<T> out;
        RationalFn<T> der = f;
        for (int k = 0; k <= order(); ++k) {
            if (!coeffs[k].is_zero()) out = out + coeffs[k] * der;
            der = der.derivative();
        }
        return out;
    }
};

}  // namespace wronskit
