#pragma once

// Scalar kinds used throughout: exact rationals (GMP-backed) and
// high-precision binary complex numbers. Double precision screening uses
// std::complex<double>; everything that carries a tolerance tighter than
// 1e-16 runs on Complex.

#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

#ifndef WRONSKIT_PRECISION_BITS
#define WRONSKIT_PRECISION_BITS 256
#endif

namespace wronskit {

namespace mp = boost::multiprecision;

using Complex = mp::cpp_complex<WRONSKIT_PRECISION_BITS, mp::backends::digit_base_2>;
using Real    = Complex::value_type;
using Rat     = mp::number<mp::gmp_rational, mp::et_off>;
using BigInt  = mp::number<mp::gmp_int, mp::et_off>;
using CDouble = std::complex<double>;

inline constexpr int compiled_precision_bits = WRONSKIT_PRECISION_BITS;

// Precision requested at runtime via WRONSKIT_PRECISION_BITS. Arithmetic
// always runs at the compiled width; the env var can only lower the
// accuracy targets derived from it.
inline int precision_bits() {
    static const int bits = [] {
        if (const char* env = std::getenv("WRONSKIT_PRECISION_BITS")) {
            int v = std::atoi(env);
            if (v <= 0)
                throw std::runtime_error("WRONSKIT_PRECISION_BITS must be a positive integer");
            if (v > compiled_precision_bits)
                throw std::runtime_error(
                    "WRONSKIT_PRECISION_BITS exceeds compiled precision (" +
                    std::to_string(compiled_precision_bits) + " bits); rebuild with a larger "
                    "-DWRONSKIT_PRECISION_BITS");
            return v;
        }
        return compiled_precision_bits;
    }();
    return bits;
}

inline Real pow2(int e) {
    Real r(1);
    return ldexp(r, e);
}

// --- scalar traits ------------------------------------------------------

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool is_exact = true;
    using real_type = Rat;
    static Rat conj(const Rat& x) { return x; }
    static Rat magnitude(const Rat& x) { return x < 0 ? Rat(-x) : x; }
    static double magnitude_d(const Rat& x) { return std::abs(x.convert_to<double>()); }
    static bool is_zero(const Rat& x, double /*scale*/ = 1.0) { return x == 0; }
    static Rat from_int(long v) { return Rat(v); }
};

template <>
struct scalar_traits<Complex> {
    static constexpr bool is_exact = false;
    using real_type = Real;
    static Complex conj(const Complex& x) { return mp::conj(x); }
    static Real magnitude(const Complex& x) { return abs(x); }
    static double magnitude_d(const Complex& x) { return abs(x).convert_to<double>(); }
    static bool is_zero(const Complex& x, double scale = 1.0) {
        return abs(x) <= pow2(-(precision_bits() - 24)) * Real(scale < 1.0 ? 1.0 : scale);
    }
    static Complex from_int(long v) { return Complex(v); }
};

template <>
struct scalar_traits<CDouble> {
    static constexpr bool is_exact = false;
    using real_type = double;
    static CDouble conj(const CDouble& x) { return std::conj(x); }
    static double magnitude(const CDouble& x) { return std::abs(x); }
    static double magnitude_d(const CDouble& x) { return std::abs(x); }
    static bool is_zero(const CDouble& x, double scale = 1.0) {
        return std::abs(x) <= 1e-13 * (scale < 1.0 ? 1.0 : scale);
    }
    static CDouble from_int(long v) { return CDouble(double(v), 0.0); }
};

// double-valued magnitude usable as a pivot-size proxy for any kind
template <class T>
double mag_d(const T& x) { return scalar_traits<T>::magnitude_d(x); }

inline CDouble to_cdouble(const Complex& z) {
    return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}
inline CDouble to_cdouble(const Rat& q) { return {q.convert_to<double>(), 0.0}; }
inline CDouble to_cdouble(const CDouble& z) { return z; }

inline Complex to_complex(const CDouble& z) { return Complex(z.real(), z.imag()); }
inline Complex to_complex(const Rat& q) {
    // numerator/denominator separately so values beyond double range survive
    return Complex(Real(numerator(q).str()) / Real(denominator(q).str()), 0);
}
inline Complex to_complex(const Complex& z) { return z; }

inline Real to_real(const Rat& q) { return Real(numerator(q).str()) / Real(denominator(q).str()); }

}  // namespace wronskit
