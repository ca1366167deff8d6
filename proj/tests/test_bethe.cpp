#include "wronskit/bethe.hpp"
#include "wronskit/util.hpp"

#include <doctest.h>

using namespace wronskit;

namespace {

MasterParams four_lines_params() {
    return MasterParams(1, 3, {Complex(-1), Complex(0), Complex(1), Complex(0.31)});
}

CriticalPoint random_generic_point(const MasterParams& mp, Rng& rng) {
    CriticalPoint x;
    for (int i = 1; i <= mp.n; ++i) {
        std::vector<Complex> lv;
        for (int j = 0; j < mp.level_size(i); ++j)
            lv.push_back(Complex(rng.uniform(-3, 3), rng.uniform(0.2, 2.5)));
        x.levels.push_back(std::move(lv));
    }
    return x;
}

}  // namespace

TEST_CASE("master function closed form at n=1, d=2") {
    MasterParams mp(1, 2, {Complex(-1), Complex(1)});
    CriticalPoint x;
    x.levels = {{Complex(0)}};
    // (s1-s2)^2 / ((x-s1)(x-s2)) = 4 / (1 * -1)
    CHECK(mag_d(Complex(master_value(x, mp) + Complex(4))) < 1e-50);

    CriticalPoint y;
    y.levels = {{Complex(0.4)}};
    Complex expect = Complex(4) / ((Complex(0.4) + Complex(1)) * (Complex(0.4) - Complex(1)));
    CHECK(mag_d(Complex(master_value(y, mp) - expect)) < 1e-50);

    CriticalPoint sing;
    sing.levels = {{Complex(1)}};
    CHECK_THROWS_AS(master_value(sing, mp), singular_configuration_error);
}

TEST_CASE("the two master-function evaluation routes agree") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + (trial % 2);
        int d = n + 1 + (trial % 3);
        int count = (n + 1) * (d - n);
        std::vector<Complex> s;
        for (int i = 0; i < count; ++i) s.push_back(Complex(rng.uniform(-4, 4), rng.uniform(-1, 1)));
        MasterParams mp(n, d, std::move(s));
        CriticalPoint x = random_generic_point(mp, rng);
        Complex a = master_value_direct(x, mp);
        Complex b = master_value_resultant(x, mp);
        CHECK(mag_d(Complex(a - b)) <= 1e-20 * (mag_d(a) + mag_d(b)));
    }
}

TEST_CASE("bethe residual: closed form and finite differences") {
    MasterParams mp(1, 2, {Complex(-1), Complex(1)});
    CriticalPoint mid;
    mid.levels = {{Complex(0)}};
    auto r = bethe_residual(mid, mp);
    CHECK(mag_d(r[0]) < 1e-60);

    CriticalPoint off;
    off.levels = {{Complex(0.3)}};
    CHECK(mag_d(bethe_residual(off, mp)[0]) > 0.1);

    // central differences of log master_value on random points
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 1 + (trial % 2);
        int d = n + 1;
        std::vector<Complex> s;
        for (int i = 0; i < (n + 1) * (d - n); ++i)
            s.push_back(Complex(rng.uniform(-3, 3), rng.uniform(-0.5, 0.5)));
        MasterParams mp2(n, d, std::move(s));
        CriticalPoint x = random_generic_point(mp2, rng);
        auto grad = bethe_residual(x, mp2);
        auto flat = x.flat();
        const Real h(1e-25);
        for (std::size_t a = 0; a < flat.size(); ++a) {
            auto xp = flat, xm = flat;
            xp[a] += Complex(h);
            xm[a] -= Complex(h);
            Complex fp = master_value(CriticalPoint::from_flat(xp, mp2), mp2);
            Complex fm = master_value(CriticalPoint::from_flat(xm, mp2), mp2);
            Complex fd = (fp - fm) / (Complex(2) * Complex(h)) /
                         master_value(CriticalPoint::from_flat(flat, mp2), mp2);
            CHECK(mag_d(Complex(fd - grad[a])) <= 1e-8 * std::max(1.0, mag_d(grad[a])));
        }
    }
}

TEST_CASE("solve_critical counts orbits") {
    {
        MasterParams mp(1, 2, {Complex(-1), Complex(1)});
        auto pts = solve_critical(mp);
        REQUIRE(pts.size() == 1);
        CHECK(mag_d(pts[0].levels[0][0]) < 1e-40);
    }
    {
        auto pts = solve_critical(four_lines_params());
        CHECK(pts.size() == 2);
    }
    {
        Rng rng(31);
        std::vector<Complex> s;
        for (int i = 0; i < 6; ++i) s.push_back(Complex(-2.5 + i + 0.3 * rng.uniform()));
        MasterParams mp(1, 4, s);
        auto pts = solve_critical(mp);
        CHECK(pts.size() == 5);
    }
}

TEST_CASE("degenerate parameters are reported, not silently deduplicated") {
    CHECK_THROWS_AS(MasterParams(1, 2, {Complex(0.5), Complex(0.5 + 1e-12)}),
                    near_degenerate_error);
}

TEST_CASE("fundamental operator and exact kernels") {
    MasterParams mp(1, 2, {Complex(-1), Complex(1)});
    CriticalPoint x;
    x.levels = {{Complex(0)}};
    FundamentalOperator fo = fundamental_operator(x, mp);
    CHECK(fo.p.size() == 1);
    CHECK((fo.p[0] - Polynomial<Complex>{Complex(0), Complex(1)}).max_coeff_mag() < 1e-60);
    CHECK((fo.w - Polynomial<Complex>{Complex(-1), Complex(0), Complex(1)}).max_coeff_mag() < 1e-60);

    // exact rational kernels: p1 = t with both Wronskian variants
    FundamentalOp<Rat> frat;
    frat.p = {Polynomial<Rat>{Rat(0), Rat(1)}};
    frat.w = Polynomial<Rat>{Rat(-1), Rat(0), Rat(1)};
    PolySpace<Rat> ker = kernel_polynomials(frat);
    CHECK(ker.basis[0] == Polynomial<Rat>{Rat(0), Rat(1)});
    CHECK(ker.basis[1] == Polynomial<Rat>{Rat(1), Rat(0), Rat(1)});
    CHECK(wronskian(ker.basis) == frat.w);

    frat.w = Polynomial<Rat>{Rat(1), Rat(0), Rat(1)};
    PolySpace<Rat> ker2 = kernel_polynomials(frat);
    CHECK(ker2.basis[1] == Polynomial<Rat>{Rat(-1), Rat(0), Rat(1)});

    // p1 itself is always in the kernel: the echelon basis reproduces it
    CHECK(ker.basis[0] == frat.p[0]);
}

TEST_CASE("degrees of the critical polynomials") {
    Rng rng(3);
    std::vector<Complex> s;
    for (int i = 0; i < 6; ++i) s.push_back(Complex(-2.2 + 0.8 * i + 0.1 * rng.uniform()));
    MasterParams mp(2, 4, s);
    SolveCriticalOptions opt;
    opt.cross_validate = false;
    auto pts = solve_critical(mp, opt);
    REQUIRE(pts.size() == 5);
    for (const auto& x : pts) {
        FundamentalOperator fo = fundamental_operator(x, mp);
        for (int i = 1; i <= mp.n; ++i) CHECK(fo.p[i - 1].degree() == i * (mp.d - mp.n));
        CHECK(fo.w.degree() == 6);
    }
}

TEST_CASE("recover_critical round-trips through the kernel") {
    // n=1: two distinct p1 over the four-lines parameters, one per orbit
    auto pts = solve_critical(four_lines_params());
    MasterParams mp = four_lines_params();
    std::vector<Polynomial<Complex>> p1s;
    for (const auto& x : pts) {
        FundamentalOperator fo = fundamental_operator(x, mp);
        PolySpace<Complex> space = kernel_polynomials(fo);
        auto rec = recover_critical(space);
        REQUIRE(rec.size() == 1);
        CHECK((rec[0] - fo.p[0]).max_coeff_mag() < 1e-30);
        p1s.push_back(rec[0]);
    }
    CHECK((p1s[0] - p1s[1]).max_coeff_mag() > 1e-3);

    // n=2 round trip including p2 = Wr(f0, f1)
    Rng rng(3);
    std::vector<Complex> s;
    for (int i = 0; i < 6; ++i) s.push_back(Complex(-2.2 + 0.8 * i + 0.1 * rng.uniform()));
    MasterParams mp2(2, 4, s);
    SolveCriticalOptions opt;
    opt.cross_validate = false;
    for (const auto& x : solve_critical(mp2, opt)) {
        FundamentalOperator fo = fundamental_operator(x, mp2);
        PolySpace<Complex> space = kernel_polynomials(fo);
        auto rec = recover_critical(space);
        REQUIRE(rec.size() == 2);
        for (int i = 0; i < 2; ++i)
            CHECK((rec[i] - fo.p[i].monic()).max_coeff_mag() < 1e-30);
        // Wr(kernel basis) is proportional to W
        Polynomial<Complex> wr = wronskian(space.basis).monic();
        CHECK((wr - fo.w).max_coeff_mag() <= 1e-20 * std::max(1.0, fo.w.max_coeff_mag()));
    }
}

TEST_CASE("reality transfer: conjugation-closed critical points give real spaces") {
    auto mp = four_lines_params();
    for (const auto& x : solve_critical(mp)) {
        // levels closed under conjugation (real parameters)
        FundamentalOperator fo = fundamental_operator(x, mp);
        for (const auto& p : fo.p)
            for (const Complex& c : p.coeffs())
                CHECK(std::abs(c.imag().convert_to<double>()) < 1e-20 * std::max(1.0, mag_d(c)));
        PolySpace<Complex> space = kernel_polynomials(fo);
        CHECK(is_real_space(space, 1e-20));
    }
}

TEST_CASE("factorization identity of the determinant operator") {
    FundamentalOp<Rat> frat;
    frat.p = {Polynomial<Rat>{Rat(0), Rat(1)}};
    frat.w = Polynomial<Rat>{Rat(-1), Rat(0), Rat(1)};
    PolySpace<Rat> ker = kernel_polynomials(frat);
    auto rep = factorization_identity_check(ker);
    CHECK(rep.annihilates_basis);
    CHECK(rep.rejects_nonmember);
    CHECK(rep.factors_match);
    CHECK(rep.max_deviation == 0);  // exact arithmetic

    // n=1, d=1: both operators reduce to the second derivative
    PolySpace<Rat> whole(1, 1, {Polynomial<Rat>{Rat(1)}, Polynomial<Rat>{Rat(0), Rat(1)}});
    auto rep2 = factorization_identity_check(whole);
    CHECK(rep2.ok());

    // a complex instance from a solved orbit
    auto mp = four_lines_params();
    auto pts = solve_critical(mp);
    PolySpace<Complex> space = kernel_polynomials(fundamental_operator(pts[0], mp));
    auto rep3 = factorization_identity_check(space);
    CHECK(rep3.ok());
    CHECK(rep3.max_deviation < 1e-18);
}

TEST_CASE("gradient norms at solved orbits meet the polish contract") {
    auto mp = four_lines_params();
    for (const auto& x : solve_critical(mp)) {
        auto r = bethe_residual(x, mp);
        double m = 0;
        for (const auto& v : r) m = std::max(m, mag_d(v));
        CHECK(m < 1e-25);
    }
}
