#include "wronskit/roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace wronskit {

namespace {

// Horner evaluation returning f(z) and f'(z)
std::pair<Complex, Complex> eval_with_derivative(const std::vector<Complex>& c, const Complex& z) {
    Complex p(0), dp(0);
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    return {p, dp};
}

// scaled backward error |f(z)| / sum |c_k| |z|^k
Real backward_error(const std::vector<Complex>& c, const Complex& z) {
    Real num = abs(eval_with_derivative(c, z).first);
    Real den(0), zp(1), az = abs(z);
    for (const Complex& ck : c) {
        den += abs(ck) * zp;
        zp *= az;
    }
    if (den == 0) den = 1;
    return num / den;
}

std::vector<Complex> companion_starts(const std::vector<Complex>& monic) {
    const int n = int(monic.size()) - 1;
    // normalize into double range
    double mx = 0;
    for (const Complex& z : monic) mx = std::max(mx, mag_d(z));
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    bool finite = mx > 0 && std::isfinite(mx);
    if (finite) {
        for (int i = 0; i < n; ++i) {
            CDouble v = to_cdouble(Complex(monic[i]));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) { finite = false; break; }
            comp(i, n - 1) = -v;
            if (i + 1 < n) comp(i + 1, i) = 1.0;
        }
    }
    std::vector<Complex> starts(n);
    if (finite) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
        if (es.info() == Eigen::Success) {
            for (int i = 0; i < n; ++i) {
                CDouble ev = es.eigenvalues()(i);
                if (!std::isfinite(ev.real()) || !std::isfinite(ev.imag())) { finite = false; break; }
                starts[i] = to_complex(ev);
            }
        } else {
            finite = false;
        }
    }
    if (!finite) {
        // ring of radius from the Cauchy bound
        Real rho(1);
        for (int k = 0; k < n; ++k) {
            Real b = pow(abs(monic[k]), Real(1) / Real(n - k));
            if (b > rho) rho = b;
        }
        rho *= 2;
        for (int i = 0; i < n; ++i) {
            double ang = (2.0 * M_PI * (i + 0.35)) / n + 0.4;
            starts[i] = Complex(rho * Real(std::cos(ang)), rho * Real(std::sin(ang)));
        }
    }
    return starts;
}

}  // namespace

std::vector<Complex> root_list(const RootMultiset& rm) {
    std::vector<Complex> out;
    for (const auto& [z, m] : rm.roots)
        for (int i = 0; i < m; ++i) out.push_back(z);
    return out;
}

RootMultiset find_roots(const Polynomial<Complex>& f, int target_bits) {
    if (f.is_zero()) throw std::invalid_argument("find_roots: zero polynomial");
    if (target_bits <= 0) target_bits = precision_bits();

    RootMultiset out;
    Polynomial<Complex> g = f;

    // strip exact roots at the origin
    int zero_mult = 0;
    while (!g.is_zero() && g.coeff(0) == Complex(0) && g.degree() > 0) {
        std::vector<Complex> c(g.coeffs().begin() + 1, g.coeffs().end());
        g = Polynomial<Complex>(std::move(c));
        ++zero_mult;
    }
    if (zero_mult) out.roots.emplace_back(Complex(0), zero_mult);
    if (g.degree() <= 0) return out;

    const std::vector<Complex> c = g.monic().coeffs();
    const int n = int(c.size()) - 1;
    std::vector<Complex> z = companion_starts(c);

    const Real tol = pow2(-(target_bits - 16));
    const int max_iter = 128 * target_bits / 16;
    Real max_corr(0);
    for (int iter = 0; iter < max_iter; ++iter) {
        max_corr = 0;
        for (int i = 0; i < n; ++i) {
            auto [p, dp] = eval_with_derivative(c, z[i]);
            if (p == Complex(0)) continue;
            if (dp == Complex(0)) {
                z[i] += Complex(tol, tol);
                auto pd = eval_with_derivative(c, z[i]);
                p = pd.first;
                dp = pd.second;
                if (dp == Complex(0)) continue;
            }
            Complex nr = p / dp;
            Complex s(0);
            for (int j = 0; j < n; ++j)
                if (j != i) {
                    Complex d = z[i] - z[j];
                    if (d == Complex(0)) d = Complex(tol);
                    s += Complex(1) / d;
                }
            Complex denom = Complex(1) - nr * s;
            Complex w = denom == Complex(0) ? nr : nr / denom;
            z[i] -= w;
            Real rel = abs(w) / (Real(1) + abs(z[i]));
            if (rel > max_corr) max_corr = rel;
        }
        if (max_corr < tol) break;
    }

    // cluster by the half-precision heuristic, scaled by the largest coefficient
    double maxcoef = 1.0;
    for (const Complex& v : c) maxcoef = std::max(maxcoef, mag_d(v));
    Real cluster_tol = pow2(-(target_bits / 2 - 12)) * Real(maxcoef);

    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (abs(z[i] - z[j]) < cluster_tol) parent[find(i)] = find(j);

    std::map<int, std::vector<int>> clusters;
    for (int i = 0; i < n; ++i) clusters[find(i)].push_back(i);

    Real worst(0);
    for (auto& [root_idx, members] : clusters) {
        Complex centroid(0);
        for (int i : members) centroid += z[i];
        centroid /= Complex(long(members.size()));
        if (members.size() == 1) {
            // Newton polish of simple roots
            for (int it = 0; it < 8; ++it) {
                auto [p, dp] = eval_with_derivative(c, centroid);
                if (dp == Complex(0)) break;
                Complex step = p / dp;
                centroid -= step;
                if (abs(step) < pow2(-(target_bits - 4)) * (Real(1) + abs(centroid))) break;
            }
        }
        Real be = backward_error(c, centroid);
        if (be > worst) worst = be;
        out.roots.emplace_back(centroid, int(members.size()));
    }
    out.residual = worst;

    if (worst > pow2(-(target_bits - 24))) {
        // a cluster of multiplicity m only locates its root to eps^(1/m)
        int max_mult = 1;
        for (const auto& r : out.roots) max_mult = std::max(max_mult, r.second);
        if (worst > pow(pow2(-(target_bits - 24)), Real(1) / Real(max_mult)))
            throw precision_exhausted_error(worst.convert_to<double>());
    }

    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });
    return out;
}

RootMultiset find_roots(const Polynomial<Rat>& f, int target_bits) {
    return find_roots(to_complex_poly(f), target_bits);
}

}  // namespace wronskit
