#include "wronskit/spectra.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>

namespace wronskit {

namespace {

std::vector<Complex> sorted_canonical(std::vector<Complex> v) {
    double scale = 1;
    for (const Complex& z : v) scale = std::max(scale, mag_d(z));
    Real tol(1e-10 * scale);
    std::sort(v.begin(), v.end(), [&](const Complex& a, const Complex& b) {
        if (abs(a.real() - b.real()) > tol) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

void check_distinct(const std::vector<Complex>& b) {
    double scale = 1;
    for (const Complex& v : b) scale = std::max(scale, mag_d(v));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (mag_d(Complex(b[i] - b[j])) < 1e-12 * scale)
                throw std::invalid_argument("exponents b must be pairwise distinct");
}

}  // namespace

std::vector<Complex> dense_eigenvalues(const Mat<Complex>& a) {
    if (a.empty()) return {};
    Polynomial<Complex> chi = char_poly(a);
    return root_list(find_roots(chi));
}

ZMatrix::ZMatrix(std::vector<Complex> b_, std::vector<Complex> alpha_)
    : b(std::move(b_)), alpha(std::move(alpha_)) {
    if (b.size() != alpha.size()) throw std::invalid_argument("ZMatrix: size mismatch");
    if (b.empty()) throw std::invalid_argument("ZMatrix: empty");
    check_distinct(b);
}

Mat<Complex> ZMatrix::matrix() const {
    const std::size_t n = b.size();
    Mat<Complex> m(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = i == j ? alpha[i] : Complex(1) / (b[i] - b[j]);
    return m;
}

bool ZMatrix::b_is_real(double tol) const {
    for (const Complex& v : b)
        if (std::abs(v.imag().convert_to<double>()) > tol * std::max(1.0, mag_d(v))) return false;
    return true;
}

ZMatrix build_Z(const std::vector<Complex>& b, const std::vector<Complex>& alpha) {
    return ZMatrix(b, alpha);
}

bool eigen_real_test(const ZMatrix& z, double tol) {
    std::vector<Complex> eig = dense_eigenvalues(z.matrix());
    Real scale(1);
    for (const Complex& v : eig) scale = std::max(scale, abs(v));
    for (const Complex& v : eig)
        if (abs(v.imag()) > Real(tol) * scale) return false;
    return true;
}

VandermondeKit::VandermondeKit(std::vector<Complex> b_) : b(std::move(b_)) {
    check_distinct(b);
    const std::size_t n = b.size();
    vandermonde.assign(n, std::vector<Complex>(n, Complex(0)));
    derivative_mat.assign(n, std::vector<Complex>(n, Complex(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            vandermonde[i][j] = i == 0 ? Complex(1) : vandermonde[i - 1][j] * b[j];
            derivative_mat[i][j] =
                i == 0 ? Complex(0) : Complex(long(i)) * vandermonde[i - 1][j];
        }
    // Lagrange rows: l_i(u) = prod_{k != i} (u - b_k) / (b_i - b_k)
    lagrange.assign(n, std::vector<Complex>(n, Complex(0)));
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial<Complex> num = Polynomial<Complex>::one();
        Complex den(1);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            num *= Polynomial<Complex>{Complex(-b[k]), Complex(1)};
            den *= (b[i] - b[k]);
        }
        for (std::size_t j = 0; j < n; ++j) lagrange[i][j] = num.coeff(int(j)) / den;
    }
    // closed-form entries of V^{-1} W
    vinv_w.assign(n, std::vector<Complex>(n, Complex(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                Complex sum(0);
                for (std::size_t k = 0; k < n; ++k)
                    if (k != i) sum += Complex(1) / (b[i] - b[k]);
                vinv_w[i][i] = sum;
            } else {
                Complex num(1), den(1);
                for (std::size_t k = 0; k < n; ++k) {
                    if (k != i && k != j) num *= (b[j] - b[k]);
                    if (k != i) den *= (b[i] - b[k]);
                }
                vinv_w[i][j] = num / den;
            }
        }
}

WrIdentityReport wr_identity_check(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("wr_identity_check: size mismatch");
    check_distinct(b);
    const std::size_t n = b.size();

    std::vector<QuasiPolynomial<Complex>> fs;
    for (std::size_t i = 0; i < n; ++i)
        fs.emplace_back(b[i], Polynomial<Complex>{Complex(-a[i]), Complex(1)});
    QuasiPolynomial<Complex> wr = wronskian(fs);

    VandermondeKit kit(b);
    Mat<Complex> inner = kit.vinv_w;  // A - V^{-1}W, negated below
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inner[i][j] = -inner[i][j];
        inner[i][i] += a[i];
    }
    Polynomial<Complex> chi = char_poly(inner);  // det(It - (A - V^{-1}W))
    Complex vdm(1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) vdm *= (b[j] - b[i]);

    WrIdentityReport rep;
    rep.lhs_poly = wr.poly;
    rep.rhs_poly = chi * vdm;
    double scale = std::max(rep.lhs_poly.max_coeff_mag(), rep.rhs_poly.max_coeff_mag());
    Polynomial<Complex> diff = rep.lhs_poly - rep.rhs_poly;
    rep.max_rel_dev = scale > 0 ? diff.max_coeff_mag() / scale : 0;
    return rep;
}

RelationReport relation_roundtrip(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                  double tol) {
    VandermondeKit kit(b);
    std::vector<Complex> alpha(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) alpha[i] = a[i] - kit.vinv_w[i][i];
    ZMatrix z(b, alpha);

    RelationReport rep;
    rep.z_eigenvalues = sorted_canonical(dense_eigenvalues(z.matrix()));
    WrIdentityReport wr = wr_identity_check(a, b);
    rep.wronskian_roots = sorted_canonical(root_list(find_roots(wr.lhs_poly)));

    double scale = 1;
    for (const Complex& v : rep.z_eigenvalues) scale = std::max(scale, mag_d(v));
    // greedy multiset matching
    std::vector<bool> used(rep.wronskian_roots.size(), false);
    rep.matched = true;
    for (const Complex& ev : rep.z_eigenvalues) {
        int best = -1;
        double bestd = 0;
        for (std::size_t j = 0; j < rep.wronskian_roots.size(); ++j) {
            if (used[j]) continue;
            double dd = mag_d(Complex(ev - rep.wronskian_roots[j]));
            if (best < 0 || dd < bestd) { best = int(j); bestd = dd; }
        }
        if (best < 0) { rep.matched = false; break; }
        used[best] = true;
        rep.max_match_dev = std::max(rep.max_match_dev, bestd / scale);
    }
    if (rep.max_match_dev > tol) rep.matched = false;
    return rep;
}

ContrapositiveReport theorem2_contrapositive_sample(int size, long trials, std::uint64_t seed) {
    if (size > 8) throw std::invalid_argument("contrapositive sample: size cap is 8");
    ContrapositiveReport rep;
    for (long t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        std::vector<Complex> b;
        while (int(b.size()) < size) {
            double cand = rng.uniform(-5, 5);
            bool ok = true;
            for (const Complex& v : b)
                if (std::abs(cand - v.real().convert_to<double>()) < 1e-2) ok = false;
            if (ok) b.push_back(Complex(cand));
        }
        std::vector<Complex> alpha(size);
        bool has_nonreal = false;
        for (int i = 0; i < size; ++i) {
            double re = rng.uniform(-5, 5);
            double im = rng.uniform(-5, 5);
            if (std::abs(im) < 0.1) im = im < 0 ? im - 0.1 : im + 0.1;
            if (rng.uniform() < 0.5 && has_nonreal) im = 0;  // allow some real entries
            alpha[i] = Complex(re, im);
            if (im != 0) has_nonreal = true;
        }
        ++rep.trials;
        ZMatrix z(b, alpha);
        if (eigen_real_test(z, 1e-8)) ++rep.violations;
    }
    return rep;
}

bool cm_invariant_holds(const CMPair& pair, double rel_tol) {
    const std::size_t n = pair.x.size();
    // bracket convention fixed by the diagonal-frame identity
    // [X,Z]_{ij} = z_{ij} (b_j - b_i), i.e. [X,Z] = ZX - XZ
    Mat<Complex> comm = mat_sub(mat_mul(pair.z, pair.x), mat_mul(pair.x, pair.z));
    for (std::size_t i = 0; i < n; ++i) comm[i][i] -= Complex(1);
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(int(i), int(j)) = to_cdouble(comm[i][j]);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0) return false;  // commutator defect must be nonzero
    return n < 2 || sv(1) < rel_tol * sv(0);
}

CMNormalForm cm_normalize(const CMPair& pair) {
    const std::size_t n = pair.x.size();
    if (!cm_invariant_holds(pair))
        throw std::invalid_argument("cm_normalize: [X,Z] - I is not of rank one");

    std::vector<Complex> eig = sorted_canonical(dense_eigenvalues(pair.x));
    double scale = 1;
    for (const Complex& v : eig) scale = std::max(scale, mag_d(v));
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (mag_d(Complex(eig[i] - eig[i + 1])) < 1e-8 * scale)
            throw not_generic_error("cm_normalize: X has (nearly) repeated eigenvalues");

    // eigenvector columns
    Mat<Complex> p(n, std::vector<Complex>(n));
    for (std::size_t c = 0; c < n; ++c) {
        Mat<Complex> shifted = pair.x;
        for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= eig[c];
        auto null = null_space(shifted, 1e-9);
        if (null.size() != 1)
            throw not_generic_error("cm_normalize: eigenvector extraction failed");
        for (std::size_t r = 0; r < n; ++r) p[r][c] = null[0][r];
    }
    Mat<Complex> pinvz = lu_solve(p, mat_mul(pair.z, p));  // P^{-1} Z P
    Mat<Complex> xdiag(n, std::vector<Complex>(n, Complex(0)));
    for (std::size_t i = 0; i < n; ++i) xdiag[i][i] = eig[i];

    // K = I - [X, Z] in the new frame; rank one with unit diagonal
    Mat<Complex> comm = mat_sub(mat_mul(pinvz, xdiag), mat_mul(xdiag, pinvz));
    Mat<Complex> k(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k[i][j] = (i == j ? Complex(1) : Complex(0)) - comm[i][j];
    for (std::size_t i = 0; i < n; ++i)
        if (mag_d(Complex(k[i][i] - Complex(1))) > 1e-8)
            throw not_generic_error("cm_normalize: commutator defect diagonal is not 1");

    // beta from the strongest column of K; conjugating by diag(beta) makes K all-ones
    std::size_t best_col = 0;
    double best = -1;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += mag_d(k[i][j]);
        if (s > best) { best = s; best_col = j; }
    }
    std::vector<Complex> beta(n);
    for (std::size_t i = 0; i < n; ++i) {
        beta[i] = k[i][best_col];
        if (beta[i] == Complex(0)) throw not_generic_error("cm_normalize: degenerate defect column");
    }
    CMNormalForm out;
    out.b = eig;
    out.pair.x = xdiag;
    out.pair.z.assign(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.pair.z[i][j] = pinvz[i][j] * beta[j] / beta[i];
    out.alpha.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.alpha[i] = out.pair.z[i][i];

    // the rank-one step forces z_{ij} = (b_i - b_j)^{-1} off the diagonal
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            Complex expect = Complex(1) / (eig[i] - eig[j]);
            if (mag_d(Complex(out.pair.z[i][j] - expect)) > 1e-6 * std::max(1.0, mag_d(expect)))
                throw not_generic_error("cm_normalize: off-diagonal entries fail the Z form");
        }
    return out;
}

std::pair<std::vector<Complex>, std::vector<Complex>> upsilon(const CMPair& pair) {
    return {sorted_canonical(dense_eigenvalues(pair.x)), sorted_canonical(dense_eigenvalues(pair.z))};
}

}  // namespace wronskit
