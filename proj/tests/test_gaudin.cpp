#include "wronskit/gaudin.hpp"
#include "wronskit/util.hpp"

#include <doctest.h>

using namespace wronskit;

namespace {

double matrix_gap(const GaudinContext& ctx, const SparseMatRat& a, const SparseMatRat& b,
                  const Complex& t0) {
    Mat<Complex> ma = eval_matrix(ctx, a, t0);
    Mat<Complex> mb = eval_matrix(ctx, b, t0);
    double scale = std::max({1e-300, mat_max_mag(ma), mat_max_mag(mb)});
    return mat_max_mag(mat_sub(std::move(ma), mb)) / scale;
}

}  // namespace

TEST_CASE("tensor action of the E operators") {
    GaudinContext ctx(1, {Complex(-1), Complex(1)});
    TensorVector v(ctx);
    v.coeffs[ctx.index({1, 2})] = Complex(1);
    // E_{12}^{(0)} on v_1 (x) v_2 raises the first factor to v_2
    TensorVector up = apply_E(ctx, 1, 2, 0, v);
    CHECK(mag_d(Complex(up.coeffs[ctx.index({2, 2})] - Complex(1))) < 1e-70);
    // diagonal: E_{11} v_1 = -v_1
    TensorVector diag = apply_E(ctx, 1, 1, 0, v);
    CHECK(mag_d(Complex(diag.coeffs[ctx.index({1, 2})] + Complex(1))) < 1e-70);
}

TEST_CASE("M with no marked points is the bare derivative power") {
    GaudinContext ctx(1, {});
    MatRatOperator m = build_M(ctx);
    CHECK(m.order() == 2);
    CHECK(m.coeffs[2].size() == 1);  // identity coefficient on d^2/dt^2
    CHECK(m.coeffs[1].empty());
    CHECK(m.coeffs[0].empty());
}

TEST_CASE("pole orders of the Gaudin coefficients at n=1, m=2") {
    GaudinContext ctx(1, {Complex(-1), Complex(1)});
    MatRatOperator m = build_M(ctx);
    REQUIRE(m.order() == 2);
    for (int i = 1; i <= 2; ++i) {
        for (const auto& [key, val] : coefficient(m, i)) {
            for (int e : val.den_exp) CHECK(e <= 2);
            if (i == 1)
                for (int e : val.den_exp) CHECK(e <= 1);
        }
    }
}

TEST_CASE("conjugation to K and its involution") {
    GaudinContext ctx(1, {Complex(-0.7), Complex(0.4), Complex(1.3), Complex(2.2)});
    MatRatOperator m = build_M(ctx);
    MatRatOperator k = conjugate_K(m);
    const Complex t0(3.7, 0.45);
    // K_1 = -M_1
    {
        Mat<Complex> k1 = eval_matrix(ctx, coefficient(k, 1), t0);
        Mat<Complex> m1 = eval_matrix(ctx, coefficient(m, 1), t0);
        double dev = 0;
        for (long r = 0; r < ctx.dim; ++r)
            for (long c = 0; c < ctx.dim; ++c) dev = std::max(dev, mag_d(Complex(k1[r][c] + m1[r][c])));
        CHECK(dev < 1e-60 * std::max(1.0, mat_max_mag(m1)));
    }
    // n=1: K_2 = M_2 - M_1'
    {
        Mat<Complex> k2 = eval_matrix(ctx, coefficient(k, 2), t0);
        Mat<Complex> m2 = eval_matrix(ctx, coefficient(m, 2), t0);
        SparseMatRat m1p;
        for (const auto& [key, val] : coefficient(m, 1)) m1p[key] = ratfac_derivative(ctx, val);
        Mat<Complex> m1d = eval_matrix(ctx, m1p, t0);
        double dev = 0;
        for (long r = 0; r < ctx.dim; ++r)
            for (long c = 0; c < ctx.dim; ++c)
                dev = std::max(dev, mag_d(Complex(k2[r][c] - (m2[r][c] - m1d[r][c]))));
        CHECK(dev < 1e-55 * std::max(1.0, mat_max_mag(m2)));
    }
    // double conjugation returns M
    MatRatOperator m2x = conjugate_K(k);
    for (int ord = 0; ord <= m.order(); ++ord)
        CHECK(matrix_gap(ctx, m.coeffs[ord], m2x.coeffs[ord], t0) < 1e-55);
}

TEST_CASE("Gaudin Hamiltonians commute and respect the sl action") {
    GaudinContext ctx(1, {Complex(-1.2), Complex(-0.1), Complex(0.8), Complex(1.7)});
    MatRatOperator m = build_M(ctx);
    Rng rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        Complex u(rng.uniform(2, 5), rng.uniform(0.1, 1));
        Complex v(rng.uniform(-5, -2), rng.uniform(0.1, 1));
        CHECK(commute_check(ctx, m, u, v) < 1e-20);
    }
    MatRatOperator k = conjugate_K(m);
    CHECK(sl_commute_check(ctx, k, Complex(2.9, 0.3)) < 1e-20);
}

TEST_CASE("universal weight vector at the n=1, d=2 critical point") {
    GaudinContext ctx(1, {Complex(-1), Complex(1)});
    CriticalPoint x;
    x.levels = {{Complex(0)}};
    TensorVector v = universal_weight_vector(ctx, x);
    // proportional to v_1 (x) v_2 - v_2 (x) v_1 with coefficients +-1
    Complex c12 = v.coeffs[ctx.index({1, 2})];
    Complex c21 = v.coeffs[ctx.index({2, 1})];
    CHECK(mag_d(Complex(c12 + c21)) < 1e-60);
    CHECK(mag_d(Complex(c12 - Complex(1))) < 1e-60);
    CHECK(is_singular(ctx, v));

    TensorVector sym(ctx);
    sym.coeffs[ctx.index({1, 2})] = Complex(1);
    sym.coeffs[ctx.index({2, 1})] = Complex(1);
    CHECK_FALSE(is_singular(ctx, sym));

    TensorVector hw(ctx);
    hw.coeffs[ctx.index({2, 2})] = Complex(1);
    CHECK(is_singular(ctx, hw));

    // weight bookkeeping: nonzero coefficients only on balanced digit words
    for (long idx = 0; idx < ctx.dim; ++idx) {
        if (v.coeffs[idx] == Complex(0)) continue;
        auto dg = ctx.digits(idx);
        CHECK(std::count(dg.begin(), dg.end(), 1) == 1);
        CHECK(std::count(dg.begin(), dg.end(), 2) == 1);
    }
}

TEST_CASE("singular dimensions match the Wronski degrees") {
    CHECK(sing_dimension_zero(1, 2) == 1);
    CHECK(sing_dimension_zero(1, 4) == 2);
    CHECK(sing_dimension_zero(1, 6) == 5);
    CHECK(sing_dimension(1, 4, {2, 2}) == 2);
    CHECK(sing_dimension_zero(2, 3) == 1);
}

TEST_CASE("eigen check against the factored operator (n=1, d=2)") {
    std::vector<Complex> s = {Complex(-1), Complex(1)};
    GaudinContext ctx(1, s);
    MasterParams mp(1, 2, s);
    CriticalPoint x;
    x.levels = {{Complex(0)}};
    TensorVector v = universal_weight_vector(ctx, x);
    MatRatOperator k = conjugate_K(build_M(ctx));
    FundamentalOperator fo = fundamental_operator(x, mp);
    auto rep = eigen_check(ctx, k, v, fo, Complex(5));
    CHECK(rep.max_rel_dev < 1e-20);
    // lambda_1(t) = -W'/W, lambda_2(t) = 2/(t^2-1) in closed form at t=5
    CHECK(mag_d(Complex(Complex(rep.eigenvalues[0].real(), rep.eigenvalues[0].imag()) +
                        Complex(10.0 / 24.0))) < 1e-12);
    CHECK(mag_d(Complex(Complex(rep.eigenvalues[1].real(), rep.eigenvalues[1].imag()) -
                        Complex(2.0 / 24.0))) < 1e-12);

    // the deviation is invariant under scaling the vector
    TensorVector scaled = v;
    for (auto& c : scaled.coeffs) c *= Complex(3.25, -1.5);
    auto rep2 = eigen_check(ctx, k, scaled, fo, Complex(5));
    CHECK(rep2.max_rel_dev < 1e-20);

    CHECK_THROWS(eigen_check(ctx, k, v, fo, Complex(1)));  // marked point
}

TEST_CASE("four-lines instance: Bethe eigenbasis with simple spectrum") {
    std::vector<Complex> s = {Complex(-1), Complex(0), Complex(1), Complex(0.31)};
    GaudinContext ctx(1, s);
    MasterParams mp(1, 3, s);
    SolveCriticalOptions opt;
    opt.cross_validate = false;
    auto pts = solve_critical(mp, opt);
    REQUIRE(pts.size() == 2);
    MatRatOperator k = conjugate_K(build_M(ctx));

    std::vector<TensorVector> vs;
    std::vector<std::vector<CDouble>> lambdas;
    Rng rng(15);
    for (const auto& x : pts) {
        TensorVector v = universal_weight_vector(ctx, x);
        CHECK(is_singular(ctx, v));
        FundamentalOperator fo = fundamental_operator(x, mp);
        for (int trial = 0; trial < 10; ++trial) {
            Complex t0(rng.uniform(2, 6), rng.uniform(-1, 1));
            auto rep = eigen_check(ctx, k, v, fo, t0);
            CHECK(rep.max_rel_dev < 1e-20);
            if (trial == 0) lambdas.push_back(rep.eigenvalues);
        }
        vs.push_back(std::move(v));
    }
    // simple spectrum: the eigenvalue vectors differ between the two orbits
    double gap = 0;
    for (std::size_t i = 0; i < lambdas[0].size(); ++i)
        gap = std::max(gap, std::abs(lambdas[0][i] - lambdas[1][i]));
    CHECK(gap > 1e-6);

    // Bethe vectors are independent and span the singular weight-0 space
    Mat<Complex> vm;
    for (const auto& v : vs) vm.push_back(v.coeffs);
    CHECK(mat_rank(vm, 1e-12) == 2);
    CHECK(long(singular_weight_zero_basis(ctx).size()) == 2);
}

TEST_CASE("shapovalov symmetry and real spectrum for real parameters") {
    std::vector<Complex> s = {Complex(-1.4), Complex(-0.2), Complex(0.9), Complex(2.1)};
    GaudinContext ctx(1, s);
    MatRatOperator k = conjugate_K(build_M(ctx));
    auto rep = shapovalov_symmetry_check(ctx, k, Complex(4.2), 20);
    CHECK(rep.max_rel_dev < 1e-20);
    CHECK(rep.antisym_norm_ratio < 1e-20);

    // negative control: a complex marked point breaks real symmetry
    std::vector<Complex> sc = {Complex(-1.4), Complex(-0.2, 0.9), Complex(0.9), Complex(2.1)};
    GaudinContext ctxc(1, sc);
    MatRatOperator kc = conjugate_K(build_M(ctxc));
    auto repc = shapovalov_symmetry_check(ctxc, kc, Complex(4.2), 20);
    // the matrix stays symmetric, but reality of the form fails: detect through
    // eigenvalues of the restricted operator instead
    CHECK(repc.antisym_norm_ratio < 1e-20);

    // real spectrum on the singular weight-0 subspace for real s
    auto basis = singular_weight_zero_basis(ctx);
    REQUIRE(basis.size() == 2);
    Mat<Complex> b = mat_transpose(basis);  // columns = basis vectors
    for (int i = 1; i <= 2; ++i) {
        Mat<Complex> ki = eval_matrix(ctx, coefficient(k, i), Complex(4.2));
        Mat<Complex> kb = mat_mul(ki, b);
        // restricted matrix R solves B R = K B
        Mat<Complex> bt = mat_transpose(b);
        Mat<Complex> gram = mat_mul(bt, b);
        Mat<Complex> rhs = mat_mul(bt, kb);
        Mat<Complex> r = lu_solve(gram, rhs);
        Polynomial<Complex> chi = char_poly(r);
        for (const auto& [z, mult] : find_roots(chi).roots)
            CHECK(std::abs(z.imag().convert_to<double>()) < 1e-20 * std::max(1.0, mag_d(z)));
    }
    // and a genuinely complex spectrum appears for the complex parameters
    auto basisc = singular_weight_zero_basis(ctxc);
    REQUIRE(basisc.size() == 2);
    Mat<Complex> bc = mat_transpose(basisc);
    bool some_complex = false;
    for (int i = 2; i <= 2; ++i) {
        Mat<Complex> ki = eval_matrix(ctxc, coefficient(kc, i), Complex(4.2));
        Mat<Complex> bt = mat_transpose(bc);
        Mat<Complex> r = lu_solve(mat_mul(bt, bc), mat_mul(bt, mat_mul(ki, bc)));
        for (const auto& [z, mult] : find_roots(char_poly(r)).roots)
            if (std::abs(z.imag().convert_to<double>()) > 1e-8) some_complex = true;
    }
    CHECK(some_complex);
}

TEST_CASE("rank-2 context builds and commutes") {
    std::vector<Complex> s = {Complex(-1.1), Complex(0.2), Complex(1.4)};
    GaudinContext ctx(2, s);
    CHECK(ctx.dim == 27);
    MatRatOperator m = build_M(ctx);
    CHECK(m.order() == 3);
    CHECK(commute_check(ctx, m, Complex(2.4, 0.4), Complex(-3.1, 0.8)) < 1e-20);
    MatRatOperator k = conjugate_K(m);
    MatRatOperator back = conjugate_K(k);
    CHECK(matrix_gap(ctx, m.coeffs[1], back.coeffs[1], Complex(2.2, 0.3)) < 1e-50);
}
