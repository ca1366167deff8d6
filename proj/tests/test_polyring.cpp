#include "wronskit/linalg.hpp"
#include "wronskit/polynomial.hpp"
#include "wronskit/roots.hpp"
#include "wronskit/util.hpp"

#include <doctest.h>

using namespace wronskit;

namespace {

Polynomial<Rat> rp(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.push_back(Rat(v));
    return Polynomial<Rat>(std::move(c));
}

// root-product oracle for the resultant: prod over root pairs (alpha - beta)
Complex resultant_from_roots(const Polynomial<Complex>& f, const Polynomial<Complex>& g) {
    Complex prod(1);
    for (const Complex& a : root_list(find_roots(f)))
        for (const Complex& b : root_list(find_roots(g))) prod *= (a - b);
    return prod;
}

}  // namespace

TEST_CASE("wronskian basics") {
    Polynomial<Rat> one = rp({1}), t = rp({0, 1}), t2p1 = rp({1, 0, 1});
    CHECK(wronskian<Rat>({one, t}) == rp({1}));
    CHECK(wronskian<Rat>({t, t}).is_zero());
    CHECK(wronskian<Rat>({t, t2p1}) == rp({-1, 0, 1}));  // t^2 - 1
}

TEST_CASE("wronskian is multilinear and scales by det under basis change") {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Polynomial<Rat>> fs;
        for (int i = 0; i < 3; ++i) {
            std::vector<Rat> c;
            for (int k = 0; k <= 4; ++k) c.push_back(Rat(rng.uniform_int(-9, 9)));
            c.push_back(Rat(1 + rng.uniform_int(0, 5)));
            fs.push_back(Polynomial<Rat>(std::move(c)));
        }
        Rat scalar(rng.uniform_int(2, 7));
        auto scaled = fs;
        scaled[0] *= scalar;
        CHECK(wronskian(scaled) == wronskian(fs) * scalar);

        // random invertible rational 3x3
        Mat<Rat> m(3, std::vector<Rat>(3));
        Rat det;
        do {
            for (auto& row : m)
                for (auto& v : row) v = Rat(rng.uniform_int(-4, 4));
            det = dense_det(m);
        } while (det == 0);
        std::vector<Polynomial<Rat>> transformed(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) transformed[i] += fs[j] * m[i][j];
        CHECK(wronskian(transformed) == wronskian(fs) * det);
    }
}

TEST_CASE("resultant and discriminant follow the root-product convention") {
    CHECK(discriminant(rp({-1, 0, 1})) == Rat(4));           // t^2 - 1
    CHECK(discriminant(rp({0, -1, 0, 1})) == Rat(4));        // t^3 - t, roots -1,0,1
    CHECK(resultant(rp({-3, 1}), rp({-5, 1})) == Rat(-2));   // (t-3),(t-5): a-b = -2
    Rat a(7), b(2);
    CHECK(resultant(Polynomial<Rat>{-a, Rat(1)}, Polynomial<Rat>{-b, Rat(1)}) == a - b);
    CHECK_THROWS_AS(discriminant(rp({1, 2})), std::invalid_argument);  // not monic
}

TEST_CASE("sylvester resultant equals the root-product oracle") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        int dm = 1 + rng.uniform_int(0, 5), dn = 1 + rng.uniform_int(0, 5);
        std::vector<Complex> ra, rb;
        for (int i = 0; i < dm; ++i) ra.push_back(Complex(rng.uniform(-3, 3), rng.uniform(-3, 3)));
        for (int i = 0; i < dn; ++i) rb.push_back(Complex(rng.uniform(-3, 3), rng.uniform(-3, 3)));
        Polynomial<Complex> f = Polynomial<Complex>::from_roots(ra);
        Polynomial<Complex> g = Polynomial<Complex>::from_roots(rb);
        Complex sylv = resultant(f, g);
        Complex oracle(1);
        for (const Complex& x : ra)
            for (const Complex& y : rb) oracle *= (x - y);
        CHECK(mag_d(Complex(sylv - oracle)) <= 1e-20 * std::max(1.0, mag_d(oracle)));
    }
    // exact equality for rational roots
    Polynomial<Rat> f{Rat(6), Rat(-5), Rat(1)};   // (t-2)(t-3)
    Polynomial<Rat> g{Rat(-1), Rat(1)};           // t - 1
    CHECK(resultant(f, g) == Rat((2 - 1) * (3 - 1)));
    // and against the numeric oracle through the root finder
    Complex r = resultant_from_roots(to_complex_poly(f), to_complex_poly(g));
    CHECK(mag_d(Complex(r - Complex(2))) < 1e-30);
}

TEST_CASE("discrete wronskian: exact case, h to zero, and quasi agreement") {
    // [1, t] with zero exponents: polynomial part h
    Rat h = Rat(3) / Rat(7);
    std::vector<QuasiPolynomial<Rat>> fs = {QuasiPolynomial<Rat>(Rat(0), rp({1})),
                                            QuasiPolynomial<Rat>(Rat(0), rp({0, 1}))};
    auto dw = discrete_wronskian(fs, h);
    CHECK(dw.exponent == Rat(0));
    CHECK(dw.poly == Polynomial<Rat>{h});

    // nonzero exponents over exact rationals are rejected
    std::vector<QuasiPolynomial<Rat>> bad = {QuasiPolynomial<Rat>(Rat(1), rp({1})),
                                             QuasiPolynomial<Rat>(Rat(0), rp({0, 1}))};
    CHECK_THROWS_AS(discrete_wronskian(bad, h), std::invalid_argument);

    // normalized by h^{n(n+1)/2}, converges to the ordinary Wronskian with order >= 1
    std::vector<QuasiPolynomial<Complex>> qs = {
        QuasiPolynomial<Complex>(Complex(0.3), Polynomial<Complex>{Complex(-0.2), Complex(1)}),
        QuasiPolynomial<Complex>(Complex(-0.7), Polynomial<Complex>{Complex(1.1), Complex(1)}),
    };
    QuasiPolynomial<Complex> exact = wronskian(qs);
    std::vector<double> errs;
    for (double hv : {1e-3, 1e-4, 1e-5}) {
        auto dq = discrete_wronskian(qs, Complex(hv));
        Polynomial<Complex> normalized = dq.poly * (Complex(1) / Complex(hv));  // h^{n(n+1)/2}, n=1
        Polynomial<Complex> diff = normalized - exact.poly;
        errs.push_back(diff.max_coeff_mag() / std::max(1.0, exact.poly.max_coeff_mag()));
    }
    CHECK(errs[0] < 1e-2);
    CHECK(errs[1] < errs[0] / 5);   // at least first order in h
    CHECK(errs[2] < errs[1] / 5);

    // quasi-polynomial agreement at h = 1e-6 within 1e-4 relative
    std::vector<QuasiPolynomial<Complex>> qp = {
        QuasiPolynomial<Complex>(Complex(0.4), Polynomial<Complex>{Complex(-1.0), Complex(1)}),
        QuasiPolynomial<Complex>(Complex(1.2), Polynomial<Complex>{Complex(0.5), Complex(1)}),
    };
    QuasiPolynomial<Complex> cont = wronskian(qp);
    auto disc = discrete_wronskian(qp, Complex(1e-6));
    Polynomial<Complex> lhs = disc.poly.monic();
    Polynomial<Complex> rhs = cont.poly.monic();
    CHECK((lhs - rhs).max_coeff_mag() <= 1e-4 * std::max(1.0, rhs.max_coeff_mag()));
    CHECK(mag_d(Complex(disc.exponent - cont.exponent)) < 1e-30);
}

TEST_CASE("root finding with multiplicities") {
    auto rm = find_roots(Polynomial<Complex>{Complex(-1), Complex(0), Complex(1)});
    REQUIRE(rm.roots.size() == 2);
    CHECK(mag_d(Complex(rm.roots[0].first + Complex(1))) < 1e-60);
    CHECK(mag_d(Complex(rm.roots[1].first - Complex(1))) < 1e-60);

    auto dbl = find_roots(Polynomial<Complex>{Complex(4), Complex(-4), Complex(1)});
    REQUIRE(dbl.roots.size() == 1);
    CHECK(dbl.roots[0].second == 2);
    CHECK(mag_d(Complex(dbl.roots[0].first - Complex(2))) < 1e-30);

    // t^4 - t = t (t-1)(t^2+t+1): oracle = exact factorization
    auto quart = find_roots(Polynomial<Complex>{Complex(0), Complex(-1), Complex(0), Complex(0), Complex(1)});
    REQUIRE(quart.total() == 4);
    std::vector<Complex> expect = {Complex(0), Complex(1), Complex(-0.5, std::sqrt(3) / 2),
                                   Complex(-0.5, -std::sqrt(3) / 2)};
    for (const Complex& e : expect) {
        bool found = false;
        for (const auto& [z, m] : quart.roots)
            if (mag_d(Complex(z - e)) < 1e-15) found = true;
        CHECK(found);
    }
}

TEST_CASE("polynomial JSON round trip") {
    Polynomial<Rat> p = rp({-1, 0, 3});
    auto j = poly_to_json(p);
    CHECK(j.at("kind") == "rational");
    CHECK(rat_poly_from_json(j) == p);

    Polynomial<Complex> q{Complex(0.25, -1.5), Complex(2)};
    auto jq = poly_to_json(q);
    CHECK(jq.at("kind") == "complex");
    Polynomial<Complex> back = complex_poly_from_json(jq);
    CHECK((back - q).max_coeff_mag() < 1e-15);

    CHECK_THROWS(rat_poly_from_json(jq));
}

TEST_CASE("shift, reverse, affine composition") {
    Polynomial<Rat> f = rp({1, 2, 1});  // (t+1)^2
    CHECK(f.shift(Rat(-1)) == rp({0, 0, 1}));
    CHECK(rp({0, 0, 1}).shift(Rat(1)) == f);
    CHECK(rp({1, 2}).reverse(1) == rp({2, 1}));
    CHECK(rp({0, 1}).compose_affine(Rat(2), Rat(3)) == rp({3, 2}));
    auto [q, r] = rp({-1, 0, 1}).divrem(rp({-1, 1}));
    CHECK(q == rp({1, 1}));
    CHECK(r.is_zero());
}
