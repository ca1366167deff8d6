#include "wronskit/fourlines.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wronskit {

namespace {

std::array<Complex, 3> cross(const std::array<Complex, 3>& a, const std::array<Complex, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Complex dot3(const std::array<Complex, 3>& a, const std::array<Complex, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

bool is_real_c(const Complex& z, double tol = 1e-9) {
    return std::abs(z.imag().convert_to<double>()) <= tol * std::max(1.0, mag_d(z));
}

// the two ruling directions of the hyperboloid through a point p on it
std::vector<std::array<Complex, 3>> ruling_directions(const std::array<Complex, 3>& p) {
    // directions v with B(p, v) = 0 and Q(v) = 0
    // pick two independent vectors spanning the plane B(p, .) = 0
    std::array<Complex, 3> jp = {p[0], -p[1], p[2]};  // gradient/2 of Q at p
    std::array<Complex, 3> seed1 = {Complex(1), Complex(0), Complex(0)};
    std::array<Complex, 3> seed2 = {Complex(0), Complex(1), Complex(0)};
    if (mag_d(jp[0]) < std::max(mag_d(jp[1]), mag_d(jp[2])) * 1e-6)
        seed1 = {Complex(0), Complex(0), Complex(1)};
    std::array<Complex, 3> w1 = cross(jp, seed1);
    std::array<Complex, 3> w2 = cross(jp, seed2);
    double n1 = std::max({mag_d(w1[0]), mag_d(w1[1]), mag_d(w1[2])});
    double n2 = std::max({mag_d(w2[0]), mag_d(w2[1]), mag_d(w2[2])});
    if (n1 < 1e-12 || n2 < 1e-12 || mag_d(dot3(cross(w1, w2), cross(w1, w2))) < 1e-18) {
        seed2 = {Complex(0), Complex(0), Complex(1)};
        w2 = cross(jp, seed2);
    }
    // Q(alpha w1 + w2) = 0: quadratic in alpha
    Complex a = hyperboloid_q(w1);
    Complex b = Complex(2) * hyperboloid_b(w1, w2);
    Complex c = hyperboloid_q(w2);
    std::vector<std::array<Complex, 3>> out;
    if (mag_d(a) < 1e-20 * std::max({mag_d(b), mag_d(c), 1.0})) {
        // w1 itself is isotropic
        out.push_back(w1);
        if (mag_d(b) > 0) {
            Complex alpha = -c / b;
            out.push_back({alpha * w1[0] + w2[0], alpha * w1[1] + w2[1], alpha * w1[2] + w2[2]});
        }
    } else {
        Complex disc = sqrt(b * b - Complex(4) * a * c);
        for (int sign = 0; sign < 2; ++sign) {
            Complex alpha = (-b + (sign ? disc : -disc)) / (Complex(2) * a);
            out.push_back({alpha * w1[0] + w2[0], alpha * w1[1] + w2[1], alpha * w1[2] + w2[2]});
        }
    }
    return out;
}

Line3C tangent_c(double s) { return tangent_line<Complex>(Complex(s)); }

// unique line on the hyperboloid through p that meets l(0) = (-1, u, u);
// this is the transversal family, opposite to the ruling of the tangents
Line3C second_ruling_line(const std::array<Complex, 3>& p) {
    Line3C ell0 = tangent_c(0.0);
    auto dirs = ruling_directions(p);
    for (const auto& v : dirs) {
        Line3C cand{p, v};
        if (lines_meet(cand, ell0, 1e-9)) return cand;
    }
    throw degenerate_configuration_error("no transversal ruling line through the point");
}

}  // namespace

HyperboloidIntersection meets_hyperboloid(const Line3C& l, double real_tol) {
    HyperboloidIntersection out;
    Complex a = hyperboloid_q(l.dir);
    Complex b = Complex(2) * hyperboloid_b(l.base, l.dir);
    Complex c = hyperboloid_q(l.base) - Complex(1);
    double scale = std::max({mag_d(a), mag_d(b), mag_d(c)});
    if (scale == 0 || (mag_d(a) < 1e-18 * scale && mag_d(b) < 1e-18 * scale && mag_d(c) < 1e-18 * scale)) {
        out.contained = true;
        return out;
    }
    out.discriminant = b * b - Complex(4) * a * c;
    if (mag_d(a) < 1e-18 * scale) {
        if (mag_d(b) > 1e-18 * scale) out.params.push_back(-c / b);
    } else {
        Complex disc = sqrt(out.discriminant);
        out.params.push_back((-b + disc) / (Complex(2) * a));
        out.params.push_back((-b - disc) / (Complex(2) * a));
    }
    for (const Complex& u : out.params) {
        std::array<Complex, 3> pt = {l.base[0] + u * l.dir[0], l.base[1] + u * l.dir[1],
                                     l.base[2] + u * l.dir[2]};
        out.points.push_back(pt);
        bool re = is_real_c(u, real_tol);
        for (const Complex& coord : pt) re = re && is_real_c(coord, real_tol);
        if (re) ++out.real_count;
    }
    return out;
}

bool lines_meet(const Line3C& a, const Line3C& b, double tol) {
    std::array<Complex, 3> diff = {b.base[0] - a.base[0], b.base[1] - a.base[1],
                                   b.base[2] - a.base[2]};
    Complex det = dot3(diff, cross(a.dir, b.dir));
    double scale = 1;
    for (const auto& v : {diff, a.dir, b.dir})
        for (const auto& x : v) scale = std::max(scale, mag_d(x));
    return mag_d(det) <= tol * scale * scale * scale;
}

TransversalResult lines_meeting_four(const Complex& s4) {
    TransversalResult out;
    std::vector<Line3C> tangents = {tangent_c(-1), tangent_c(0), tangent_c(1)};
    for (double fixed : {-1.0, 0.0, 1.0})
        if (mag_d(Complex(s4 - Complex(fixed))) < 1e-12)
            throw std::invalid_argument("lines_meeting_four: s4 must avoid the fixed tangents");
    Line3C l4 = {gamma_point(s4), gamma_velocity(s4)};
    HyperboloidIntersection hits = meets_hyperboloid(l4);
    if (hits.contained)
        throw degenerate_configuration_error("fourth tangent line lies on the hyperboloid");
    if (mag_d(hits.discriminant) < 1e-18)
        throw degenerate_configuration_error("tangential intersection with the hyperboloid");
    for (const auto& pt : hits.points) {
        Line3C tr = second_ruling_line(pt);
        bool ok = lines_meet(tr, l4, 1e-9);
        for (const auto& t : tangents) ok = ok && lines_meet(tr, t, 1e-9);
        if (!ok) throw std::logic_error("transversal fails the incidence cross-check");
        bool re = true;
        for (int i = 0; i < 3 && re; ++i) re = is_real_c(tr.base[i]) && is_real_c(tr.dir[i]);
        out.real_flags.push_back(re);
        if (re) ++out.real_count;
        out.lines.push_back(tr);
    }
    return out;
}

TransversalResult lines_meeting_four(double s4, bool s4_at_infinity) {
    TransversalResult out;
    std::vector<Line3C> tangents = {tangent_c(-1), tangent_c(0), tangent_c(1)};

    if (!s4_at_infinity) return lines_meeting_four(Complex(s4));

    // s4 at infinity: the tangent line at infinity lies in the ideal plane and
    // meets the conic x^2 - y^2 + z^2 = 0 in the directions (6b, 7a, -a) with
    // 36 b^2 = 48 a^2
    for (int sign = 0; sign < 2; ++sign) {
        double ratio = std::sqrt(48.0 / 36.0) * (sign ? 1.0 : -1.0);
        std::array<Complex, 3> v = {Complex(6.0 * ratio), Complex(7), Complex(-1)};
        // lines of H with direction v: base solves B(base, v) = 0, Q(base) = 1
        std::array<Complex, 3> jv = {v[0], -v[1], v[2]};
        std::array<Complex, 3> w1 = cross(jv, {Complex(1), Complex(0), Complex(0)});
        std::array<Complex, 3> w2 = cross(jv, {Complex(0), Complex(1), Complex(0)});
        // base = x w1 + y w2 with Q(base)=1, B(base, v)=0 holds automatically;
        // one more free parameter fixed by meeting l(0)
        // parametrize candidates by solving the conic Q(x w1 + y w2) = 1 along
        // a pencil through the l(0) incidence condition
        Line3C ell0 = tangent_c(0.0);
        // base must satisfy: coplanarity det[base - p0, v, d0] = 0 (meets l(0))
        std::array<Complex, 3> n = cross(v, ell0.dir);
        // base . n = p0 . n ; base = x w1 + y w2
        Complex rhs = dot3(ell0.base, n);
        Complex c1 = dot3(w1, n), c2 = dot3(w2, n);
        // solve c1 x + c2 y = rhs together with Q(x w1 + y w2) = 1
        Complex qa = hyperboloid_q(w1), qb = Complex(2) * hyperboloid_b(w1, w2), qc = hyperboloid_q(w2);
        // substitute x = (rhs - c2 y)/c1 (choose the bigger pivot)
        bool pivot1 = mag_d(c1) >= mag_d(c2);
        Complex A, B, C;
        if (pivot1) {
            // x = (rhs - c2 y)/c1
            A = qa * c2 * c2 / (c1 * c1) - qb * c2 / c1 + qc;
            B = Complex(-2) * qa * rhs * c2 / (c1 * c1) + qb * rhs / c1;
            C = qa * rhs * rhs / (c1 * c1) - Complex(1);
        } else {
            A = qc * c1 * c1 / (c2 * c2) - qb * c1 / c2 + qa;
            B = Complex(-2) * qc * rhs * c1 / (c2 * c2) + qb * rhs / c2;
            C = qc * rhs * rhs / (c2 * c2) - Complex(1);
        }
        Complex disc = sqrt(B * B - Complex(4) * A * C);
        for (int branch = 0; branch < 2; ++branch) {
            Complex t = (-B + (branch ? disc : -disc)) / (Complex(2) * A);
            Complex other = pivot1 ? (rhs - c2 * t) / c1 : (rhs - c1 * t) / c2;
            Complex x = pivot1 ? other : t, y = pivot1 ? t : other;
            std::array<Complex, 3> base = {x * w1[0] + y * w2[0], x * w1[1] + y * w2[1],
                                           x * w1[2] + y * w2[2]};
            Line3C cand{base, v};
            bool ok = true;
            for (const auto& tn : tangents) ok = ok && lines_meet(cand, tn, 1e-8);
            if (!ok) continue;
            bool re = true;
            for (int i = 0; i < 3 && re; ++i) re = is_real_c(cand.base[i]) && is_real_c(cand.dir[i]);
            out.real_flags.push_back(re);
            if (re) ++out.real_count;
            out.lines.push_back(cand);
            break;  // one line of the transversal family per direction
        }
    }
    if (out.lines.size() != 2)
        throw degenerate_configuration_error("infinite-tangent transversal construction failed");
    return out;
}

Polynomial<Complex> wronskian_of_line(const Line3C& l) {
    // affine functionals vanishing on the line: c0 + c.x with c . dir = 0
    // basis of dir-perp
    std::array<Complex, 3> seed = {Complex(1), Complex(0), Complex(0)};
    if (mag_d(l.dir[0]) >= std::max(mag_d(l.dir[1]), mag_d(l.dir[2])))
        seed = {Complex(0), Complex(1), Complex(0)};
    std::array<Complex, 3> c1 = cross(l.dir, seed);
    std::array<Complex, 3> c2 = cross(l.dir, c1);
    // compose with gamma: cubic polynomials
    Polynomial<Complex> gx{Complex(-1), Complex(0), Complex(6)};
    Polynomial<Complex> gy{Complex(0), Complex(3) / Complex(2), Complex(0), Complex(7) / Complex(2)};
    Polynomial<Complex> gz{Complex(0), Complex(3) / Complex(2), Complex(0), Complex(-1) / Complex(2)};
    auto functional = [&](const std::array<Complex, 3>& c) {
        Complex c0 = -(c[0] * l.base[0] + c[1] * l.base[1] + c[2] * l.base[2]);
        return gx * c[0] + gy * c[1] + gz * c[2] + Polynomial<Complex>::constant(c0);
    };
    Polynomial<Complex> w = wronskian<Complex>({functional(c1), functional(c2)});
    // the degree-5 coefficient cancels structurally; drop rounding residue
    return w.chop(w.max_coeff_mag());
}

MonotoneResult monotone_flag_instance(double v, double w) {
    for (double x : {v, w})
        if (x == -1 || x == 0 || x == 1)
            throw std::invalid_argument("monotone_flag_instance: secant points must avoid tangencies");
    if (v == w) throw degenerate_configuration_error("secant requires two distinct points");
    MonotoneResult out;
    auto pv = gamma_point<Complex>(Complex(v));
    auto pw = gamma_point<Complex>(Complex(w));
    Line3C secant{pv, {pw[0] - pv[0], pw[1] - pv[1], pw[2] - pv[2]}};
    HyperboloidIntersection hits = meets_hyperboloid(secant);
    out.real_count = hits.contained ? 2 : hits.real_count;

    std::vector<std::pair<double, char>> pts = {
        {-1, '1'}, {0, '1'}, {1, '1'}, {v, '2'}, {w, '2'}};
    std::sort(pts.begin(), pts.end());
    for (const auto& [val, tag] : pts) out.ordering.push_back(tag);
    return out;
}

Mat<Complex> quadric_through_lines(const Line3C& a, const Line3C& b, const Line3C& c) {
    // symmetric 4x4 q on coordinates (1, x, y, z); 10 unknowns, 9 conditions
    auto row_for = [](const std::array<Complex, 4>& p, const std::array<Complex, 4>& q) {
        // entries of the symmetric product: unknown order
        // (00,01,02,03,11,12,13,22,23,33)
        std::vector<Complex> row(10);
        int idx = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                Complex v = p[i] * q[j] + p[j] * q[i];
                if (i == j) v = p[i] * q[i];
                row[idx++] = v;
            }
        return row;
    };
    Mat<Complex> sys;
    for (const Line3C* l : {&a, &b, &c}) {
        std::array<Complex, 4> p0 = {Complex(1), l->base[0], l->base[1], l->base[2]};
        std::array<Complex, 4> dv = {Complex(0), l->dir[0], l->dir[1], l->dir[2]};
        sys.push_back(row_for(p0, p0));
        sys.push_back(row_for(p0, dv));
        sys.push_back(row_for(dv, dv));
    }
    auto null = null_space(sys, 1e-10);
    if (null.size() != 1)
        throw degenerate_configuration_error("quadric through the three lines is not unique");
    const std::vector<Complex>& q = null[0];
    Mat<Complex> m(4, std::vector<Complex>(4, Complex(0)));
    int idx = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            if (i == j) m[i][i] = q[idx];
            else {
                m[i][j] = q[idx];
                m[j][i] = q[idx];
            }
            ++idx;
        }
    double scale = mat_max_mag(m);
    for (auto& row : m)
        for (auto& vv : row) vv /= Complex(scale);
    return m;
}

Complex discriminant_fourlines(const std::array<Complex, 4>& s) {
    Line3C l1 = {gamma_point(s[0]), gamma_velocity(s[0])};
    Line3C l2 = {gamma_point(s[1]), gamma_velocity(s[1])};
    Line3C l3 = {gamma_point(s[2]), gamma_velocity(s[2])};
    Mat<Complex> q = quadric_through_lines(l1, l2, l3);
    // restrict to the fourth tangent line
    auto g = gamma_point(s[3]);
    auto gv = gamma_velocity(s[3]);
    std::array<Complex, 4> p0 = {Complex(1), g[0], g[1], g[2]};
    std::array<Complex, 4> dv = {Complex(0), gv[0], gv[1], gv[2]};
    auto apply = [&](const std::array<Complex, 4>& u, const std::array<Complex, 4>& v) {
        Complex acc(0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) acc += u[i] * q[i][j] * v[j];
        return acc;
    };
    Complex A = apply(dv, dv);
    Complex B = Complex(2) * apply(p0, dv);
    Complex C = apply(p0, p0);
    return B * B - Complex(4) * A * C;
}

Polynomial<Rat> discriminant_fourlines_symbolic() {
    // tangents at -1, 0, 1 lie on x^2 - y^2 + z^2 = 1; restrict the form to
    // the moving tangent line symbolically in the tangency parameter
    Polynomial<Rat> gx{Rat(-1), Rat(0), Rat(6)};
    Polynomial<Rat> gy{Rat(0), Rat(3) / Rat(2), Rat(0), Rat(7) / Rat(2)};
    Polynomial<Rat> gz{Rat(0), Rat(3) / Rat(2), Rat(0), Rat(-1) / Rat(2)};
    Polynomial<Rat> vx = gx.derivative(), vy = gy.derivative(), vz = gz.derivative();
    Polynomial<Rat> A = vx * vx - vy * vy + vz * vz;
    Polynomial<Rat> B = (gx * vx - gy * vy + gz * vz) * Rat(2);
    Polynomial<Rat> C = gx * gx - gy * gy + gz * gz - Polynomial<Rat>::one();
    return B * B - A * C * Rat(4);
}

}  // namespace wronskit
