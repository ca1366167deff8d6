#pragma once

// The worked geometry of the problem of four lines: the twisted cubic, its
// tangent lines, the hyperboloid carrying three of them, transversal counts,
// the monotone counterexample, and the configuration discriminant.

#include "wronskit/linalg.hpp"
#include "wronskit/polynomial.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace wronskit {

template <class T>
struct Line3 {
    std::array<T, 3> base{};
    std::array<T, 3> dir{};
};

using Line3R = Line3<Rat>;
using Line3C = Line3<Complex>;

// gamma(t) = (6t^2 - 1, 7/2 t^3 + 3/2 t, 3/2 t - 1/2 t^3)
template <class T>
std::array<T, 3> gamma_point(const T& t) {
    T t2 = t * t, t3 = t2 * t;
    return {T(6) * t2 - T(1), (T(7) * t3 + T(3) * t) / T(2), (T(3) * t - t3) / T(2)};
}
template <class T>
std::array<T, 3> gamma_velocity(const T& t) {
    T t2 = t * t;
    return {T(12) * t, (T(21) * t2 + T(3)) / T(2), (T(3) - T(3) * t2) / T(2)};
}
template <class T>
Line3<T> tangent_line(const T& s) {
    return {gamma_point(s), gamma_velocity(s)};
}

// x^2 - y^2 + z^2 (signature of the hyperboloid's quadratic form)
template <class T>
T hyperboloid_q(const std::array<T, 3>& p) {
    return p[0] * p[0] - p[1] * p[1] + p[2] * p[2];
}
template <class T>
T hyperboloid_b(const std::array<T, 3>& p, const std::array<T, 3>& q) {
    return p[0] * q[0] - p[1] * q[1] + p[2] * q[2];
}

// true when the whole line satisfies x^2 - y^2 + z^2 = 1 identically
template <class T>
bool line_on_hyperboloid(const Line3<T>& l) {
    T a = hyperboloid_q(l.dir);
    T b = hyperboloid_b(l.base, l.dir);
    T c = hyperboloid_q(l.base) - T(1);
    return a == T(0) && b == T(0) && c == T(0);
}

struct HyperboloidIntersection {
    bool contained = false;                 // line lies in the surface
    std::vector<Complex> params;            // parameter values of the meetings
    std::vector<std::array<Complex, 3>> points;
    int real_count = 0;
    Complex discriminant;                   // of the restricted quadratic
};

HyperboloidIntersection meets_hyperboloid(const Line3C& l, double real_tol = 1e-9);

// do two lines meet (coplanarity of base difference and the two directions)?
bool lines_meet(const Line3C& a, const Line3C& b, double tol = 1e-20);

struct degenerate_configuration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TransversalResult {
    std::vector<Line3C> lines;       // the transversals to the four tangent lines
    std::vector<bool> real_flags;
    int real_count = 0;
};

// transversals to l(-1), l(0), l(1), l(s4); s4 may be complex or infinite
TransversalResult lines_meeting_four(double s4, bool s4_at_infinity = false);
TransversalResult lines_meeting_four(const Complex& s4);

// the degree-<=4 Wronskian of the pencil of cubics cut out by a line
Polynomial<Complex> wronskian_of_line(const Line3C& l);

struct MonotoneResult {
    int real_count = 0;
    std::string ordering;  // interleaving word: 1 = tangency point, 2 = secant point
};

// transversals to the three fixed tangent lines and the secant line through
// gamma(v), gamma(w)
MonotoneResult monotone_flag_instance(double v, double w);

// quadric through three pairwise skew lines, as the symmetric 4x4 matrix in
// coordinates (1, x, y, z); normalized so the largest entry is 1
Mat<Complex> quadric_through_lines(const Line3C& a, const Line3C& b, const Line3C& c);

// discriminant of the restricted quadratic that governs the transversal count
// for tangent lines at s1..s4
Complex discriminant_fourlines(const std::array<Complex, 4>& s);

// the same for the configuration {-1, 0, 1, s}, exactly in Q[s]
Polynomial<Rat> discriminant_fourlines_symbolic();

}  // namespace wronskit
