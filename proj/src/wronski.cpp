#include "wronskit/wronski.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>

namespace wronskit {

namespace {

// unknowns: the free coefficients of the canonical echelon basis,
// u[i*(d-n)+k] = coefficient of t^k in f_i (k < d-n)
template <class T>
std::vector<Polynomial<T>> basis_from_coords(int n, int d, const std::vector<T>& u) {
    const int w = d - n;
    std::vector<Polynomial<T>> fs(n + 1);
    for (int i = 0; i <= n; ++i) {
        std::vector<T> c(w + i + 1, T(0));
        for (int k = 0; k < w; ++k) c[k] = u[i * w + k];
        c[w + i] = T(1);
        fs[i] = Polynomial<T>(std::move(c));
    }
    return fs;
}

template <class T>
std::vector<T> space_coords(const PolySpace<T>& p) {
    const int w = p.d - p.n;
    std::vector<T> u(std::size_t(p.n + 1) * w);
    for (int i = 0; i <= p.n; ++i)
        for (int k = 0; k < w; ++k) u[i * w + k] = p.basis[i].coeff(k);
    return u;
}

// residual: coefficients 0..N-1 of Wr(basis) - scaled_target
template <class T>
std::vector<T> wronski_residual(int n, int d, const std::vector<T>& u,
                                const Polynomial<T>& scaled_target) {
    const int N = (n + 1) * (d - n);
    Polynomial<T> wr = wronskian(basis_from_coords(n, d, u));
    std::vector<T> r(N);
    for (int k = 0; k < N; ++k) r[k] = wr.coeff(k) - scaled_target.coeff(k);
    return r;
}

// column for u[i,k]: Wr with f_i replaced by t^k (multilinearity)
template <class T>
Mat<T> wronski_jacobian(int n, int d, const std::vector<T>& u) {
    const int w = d - n, N = (n + 1) * w;
    std::vector<Polynomial<T>> fs = basis_from_coords(n, d, u);
    Mat<T> jac(N, std::vector<T>(N, T(0)));
    for (int i = 0; i <= n; ++i) {
        Polynomial<T> saved = fs[i];
        for (int k = 0; k < w; ++k) {
            fs[i] = Polynomial<T>::monomial(k);
            Polynomial<T> col = wronskian(fs);
            for (int row = 0; row < N; ++row) jac[row][i * w + k] = col.coeff(row);
        }
        fs[i] = saved;
    }
    return jac;
}

template <class T>
double coords_scale(const std::vector<T>& u) {
    double m = 1.0;
    for (const T& v : u) m = std::max(m, mag_d(v));
    return m;
}

template <class T>
double coords_distance(const std::vector<T>& a, const std::vector<T>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, mag_d(T(a[i] - b[i])));
    return m;
}

// Per-row scales of the residual: rows with a small natural coefficient scale
// get a correspondingly tight tolerance, which matters for clustered targets
// whose coefficients span many orders of magnitude.
template <class T>
std::vector<double> residual_row_scales(const Polynomial<T>& scaled_target) {
    const double tscale = std::max(1.0, scaled_target.max_coeff_mag());
    std::vector<double> rs;
    for (int k = 0;; ++k) {
        double c = k <= scaled_target.degree() ? mag_d(scaled_target.coeff(k)) : 0.0;
        rs.push_back(std::max(c, 1e-8 * tscale));
        if (k >= scaled_target.degree()) break;
    }
    return rs;
}

// Newton iteration with row-equilibrated solves; returns nothing on divergence
template <class T>
std::optional<std::vector<T>> newton_solve(int n, int d, std::vector<T> u,
                                           const Polynomial<T>& scaled_target, int max_iter,
                                           double rel_tol) {
    const int N = (n + 1) * (d - n);
    std::vector<double> rs = residual_row_scales(scaled_target);
    rs.resize(N, rs.back());
    auto scaled_norm = [&](const std::vector<T>& r) {
        double m = 0;
        for (int k = 0; k < N; ++k) m = std::max(m, mag_d(r[k]) / rs[k]);
        return m;
    };
    for (int it = 0; it < max_iter; ++it) {
        std::vector<T> r = wronski_residual(n, d, u, scaled_target);
        if (scaled_norm(r) <= rel_tol) return u;
        Mat<T> jac = wronski_jacobian(n, d, u);
        for (int row = 0; row < N; ++row) {
            T inv = T(1.0 / rs[row]);
            r[row] *= inv;
            for (int col = 0; col < N; ++col) jac[row][col] *= inv;
        }
        std::vector<T> step;
        try {
            step = lu_solve_vec(jac, r);
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
        double smag = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] -= step[i];
            smag = std::max(smag, mag_d(step[i]));
        }
        if (!(smag == smag) || smag > 1e12 * coords_scale(u)) return std::nullopt;  // NaN or blowup
    }
    std::vector<T> r = wronski_residual(n, d, u, scaled_target);
    if (scaled_norm(r) <= rel_tol) return u;
    return std::nullopt;
}

std::vector<CDouble> to_cdouble_vec(const std::vector<Complex>& u) {
    std::vector<CDouble> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = to_cdouble(u[i]);
    return v;
}
std::vector<Complex> to_complex_vec(const std::vector<CDouble>& u) {
    std::vector<Complex> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = to_complex(u[i]);
    return v;
}

struct NormalizedProblem {
    int n, d;
    std::vector<Complex> roots;          // normalized roots
    Complex scale;                       // original root = scale * normalized root
    Polynomial<Complex> scaled_target;   // c * prod(t - root), c the monomial constant
    Polynomial<CDouble> scaled_target_d;
    long expected;
};

NormalizedProblem make_problem(const std::vector<Complex>& roots, int n, int d) {
    NormalizedProblem prob;
    prob.n = n;
    prob.d = d;
    prob.expected = degree_iota(n, d);
    // geometric-mean scale of the nonzero roots
    Real logsum(0);
    int nz = 0;
    for (const Complex& r : roots)
        if (abs(r) > Real(1e-300)) { logsum += log(abs(r)); ++nz; }
    Real c = nz ? exp(logsum / nz) : Real(1);
    if (c < Real(0.25) || c > Real(4)) prob.scale = Complex(c);
    else prob.scale = Complex(1);
    for (const Complex& r : roots) prob.roots.push_back(r / prob.scale);

    std::vector<int> degs(n + 1);
    for (int i = 0; i <= n; ++i) degs[i] = d - n + i;
    Complex cst(wronskian_monomial_constant(degs));
    prob.scaled_target = Polynomial<Complex>::from_roots(prob.roots) * cst;
    prob.scaled_target_d = to_cdouble_poly(prob.scaled_target);
    return prob;
}

// map normalized-coordinate solution back to t coordinates
std::vector<Complex> denormalize(const NormalizedProblem& prob, const std::vector<Complex>& u) {
    if (prob.scale == Complex(1)) return u;
    const int w = prob.d - prob.n;
    std::vector<Complex> out(u.size());
    for (int i = 0; i <= prob.n; ++i) {
        int m = w + i;
        for (int k = 0; k < w; ++k) out[i * w + k] = u[i * w + k] * pow(prob.scale, m - k);
    }
    return out;
}

// deduplicate coordinate vectors (max-norm, relative threshold 1e-8)
void dedup(std::vector<std::vector<Complex>>& sols) {
    std::vector<std::vector<Complex>> uniq;
    for (auto& s : sols) {
        bool dup = false;
        for (const auto& t : uniq)
            if (coords_distance(s, t) < 1e-8 * coords_scale(s)) { dup = true; break; }
        if (!dup) uniq.push_back(std::move(s));
    }
    sols = std::move(uniq);
}

std::vector<CDouble> random_start(const NormalizedProblem& prob, Rng& rng) {
    const int n = prob.n, d = prob.d, w = d - n;
    std::vector<CDouble> u(std::size_t(n + 1) * w);
    if (rng.uniform() < 0.5) {
        // spanning set with roots jittered around a random subset of the target roots
        std::vector<Polynomial<CDouble>> span(n + 1);
        for (int i = 0; i <= n; ++i) {
            std::vector<CDouble> rts(w + i);
            for (int j = 0; j < w + i; ++j) {
                CDouble base = to_cdouble(prob.roots[rng.uniform_int(0, int(prob.roots.size()) - 1)]);
                double gap = 0.3 * std::max(0.05, std::abs(base));
                rts[j] = base + CDouble(gap * rng.normal(), gap * rng.normal());
            }
            span[i] = Polynomial<CDouble>::from_roots(rts);
        }
        auto sp = make_poly_space<CDouble>(n, d, span, 1e-12);
        if (sp) return space_coords(*sp);
    }
    // coefficient-scaled complex gaussian
    double R = 0;
    for (const Complex& r : prob.roots) R += mag_d(r);
    R = std::max(0.3, R / double(prob.roots.size()));
    for (int i = 0; i <= n; ++i) {
        int m = w + i;
        for (int k = 0; k < w; ++k)
            u[i * w + k] = CDouble(rng.normal(), rng.normal()) * std::pow(R, double(m - k));
    }
    return u;
}

// one multistart round; appends polished normalized-coordinate solutions
void multistart_round(const NormalizedProblem& prob, std::uint64_t seed, int count,
                      std::vector<std::vector<Complex>>& found, unsigned workers,
                      int newton_iterations) {
    std::vector<std::optional<std::vector<CDouble>>> results(count);
    parallel_for(
        count,
        [&](std::size_t idx) {
            Rng rng(derive_seed(seed, idx));
            std::vector<CDouble> u0 = random_start(prob, rng);
            results[idx] = newton_solve<CDouble>(prob.n, prob.d, std::move(u0), prob.scaled_target_d,
                                                 newton_iterations, 1e-11);
        },
        workers);
    for (auto& r : results)
        if (r) found.push_back(to_complex_vec(*r));
}

const double kPolishTol = 1e-45;

// high-precision polish; drops points that fail to converge
void polish_all(const NormalizedProblem& prob, std::vector<std::vector<Complex>>& sols) {
    std::vector<std::vector<Complex>> out;
    std::mutex m;
    parallel_for(sols.size(), [&](std::size_t i) {
        auto polished =
            newton_solve<Complex>(prob.n, prob.d, sols[i], prob.scaled_target, 40, kPolishTol);
        if (polished) {
            std::lock_guard<std::mutex> lock(m);
            out.push_back(std::move(*polished));
        }
    });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
            if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
        }
        return false;
    });
    sols = std::move(out);
}

WronskiFiber assemble_fiber(const NormalizedProblem& prob, const Polynomial<Complex>& target,
                            std::vector<std::vector<Complex>>& sols) {
    WronskiFiber fiber;
    fiber.n = prob.n;
    fiber.d = prob.d;
    fiber.target = target;
    fiber.expected = prob.expected;
    const double tscale = std::max(1.0, prob.scaled_target.max_coeff_mag());
    for (auto& u : sols) {
        std::vector<Complex> r = wronski_residual(prob.n, prob.d, u, prob.scaled_target);
        double rmag = 0;
        for (const Complex& v : r) rmag = std::max(rmag, mag_d(v));
        fiber.residuals.push_back(rmag / tscale);
        fiber.solutions.emplace_back(prob.n, prob.d,
                                     basis_from_coords(prob.n, prob.d, denormalize(prob, u)));
    }
    fiber.complete = long(fiber.solutions.size()) == fiber.expected;
    return fiber;
}

// continuation of a set of solutions along a straight segment of (normalized)
// root configurations; throws path_through_discriminant_error on failure
void continue_segment(int n, int d, std::vector<std::vector<Complex>>& sols,
                      const std::vector<Complex>& from, const std::vector<Complex>& to,
                      unsigned workers) {
    std::vector<int> degs(n + 1);
    for (int i = 0; i <= n; ++i) degs[i] = d - n + i;
    const Complex cst(wronskian_monomial_constant(degs));

    std::vector<std::vector<CDouble>> cur(sols.size()), prev;
    for (std::size_t i = 0; i < sols.size(); ++i) cur[i] = to_cdouble_vec(sols[i]);
    double tau = 0, h = 1.0 / 16, h_prev = 0;
    const double h_floor = 1e-12;
    while (tau < 1) {
        double next = std::min(1.0, tau + h);
        std::vector<CDouble> roots(from.size());
        for (std::size_t k = 0; k < from.size(); ++k)
            roots[k] = to_cdouble(Complex(from[k] + Complex(next) * (to[k] - from[k])));
        Polynomial<CDouble> target = Polynomial<CDouble>::from_roots(roots) * to_cdouble(cst);

        std::vector<std::optional<std::vector<CDouble>>> moved(cur.size());
        parallel_for(
            cur.size(),
            [&](std::size_t i) {
                std::vector<CDouble> guess = cur[i];
                if (!prev.empty() && h_prev > 0) {
                    double f = (next - tau) / h_prev;
                    for (std::size_t k = 0; k < guess.size(); ++k)
                        guess[k] += f * (cur[i][k] - prev[i][k]);
                }
                moved[i] = newton_solve<CDouble>(n, d, std::move(guess), target, 30, 1e-12);
            },
            workers);

        bool ok = true;
        for (const auto& m : moved)
            if (!m) { ok = false; break; }
        if (ok) {
            // reject steps where two tracked solutions come too close
            for (std::size_t i = 0; i < moved.size() && ok; ++i)
                for (std::size_t j = i + 1; j < moved.size() && ok; ++j)
                    if (coords_distance(*moved[i], *moved[j]) <
                        1e-6 * coords_scale(*moved[i]))
                        ok = false;
        }
        if (ok) {
            // anti-jump: each corrected point must stay closest to its own track
            for (std::size_t i = 0; i < moved.size() && ok; ++i) {
                double own = coords_distance(*moved[i], cur[i]);
                for (std::size_t j = 0; j < cur.size() && ok; ++j)
                    if (j != i && coords_distance(*moved[i], cur[j]) < own) ok = false;
            }
        }
        if (!ok) {
            h /= 2;
            if (h < h_floor)
                throw path_through_discriminant_error(
                    "continuation failed: step size exhausted near the discriminant");
            continue;
        }
        prev = std::move(cur);
        cur.resize(moved.size());
        for (std::size_t i = 0; i < moved.size(); ++i) cur[i] = std::move(*moved[i]);
        h_prev = next - tau;
        tau = next;
        h = std::min(0.125, h * 1.5);
    }
    for (std::size_t i = 0; i < sols.size(); ++i) sols[i] = to_complex_vec(cur[i]);
}

}  // namespace

WronskiFiber inverse_wronski_from_roots(const std::vector<Complex>& roots, int n, int d,
                                        const InverseOptions& opt) {
    const int N = (n + 1) * (d - n);
    if (int(roots.size()) != N)
        throw std::invalid_argument("inverse_wronski: need exactly (n+1)(d-n) roots");
    double scale = 1;
    for (const Complex& r : roots) scale = std::max(scale, mag_d(r));
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (mag_d(Complex(roots[i] - roots[j])) < 1e-10 * scale)
                throw unsupported_input_error(
                    "inverse_wronski: repeated root in the target Wronskian (nonreduced fiber)");

    NormalizedProblem prob = make_problem(roots, n, d);
    std::vector<std::vector<Complex>> sols;
    const long budget = std::max<long>(opt.starts_per_orbit * prob.expected, 64);
    long used = 0;
    int round = 0;
    while (long(sols.size()) < prob.expected && used < budget) {
        int batch = int(std::min<long>(budget - used, std::max<long>(4 * prob.expected, 32)));
        multistart_round(prob, derive_seed(opt.seed, 1000 + round), batch, sols, opt.workers,
                         opt.newton_iterations);
        polish_all(prob, sols);
        dedup(sols);
        used += batch;
        ++round;
    }

    if (long(sols.size()) < prob.expected && opt.warm_continuation && prob.expected > 1) {
        // top up by continuation from a well-spaced real reference configuration
        std::vector<Complex> ref(N);
        for (int k = 0; k < N; ++k) ref[k] = Complex(-1.1 + 2.2 * k / double(N - 1) + 0.013 * (k % 3));
        bool ref_is_target = true;
        for (int k = 0; k < N; ++k)
            if (mag_d(Complex(ref[k] - prob.roots[k])) > 1e-12) { ref_is_target = false; break; }
        if (!ref_is_target) {
            InverseOptions ref_opt = opt;
            ref_opt.warm_continuation = false;
            ref_opt.starts_per_orbit = 4 * opt.starts_per_orbit;
            WronskiFiber ref_fiber = inverse_wronski_from_roots(ref, n, d, ref_opt);
            if (ref_fiber.complete) {
                std::vector<std::vector<Complex>> tracked;
                for (const auto& s : ref_fiber.solutions) tracked.push_back(space_coords(s));
                try {
                    continue_segment(n, d, tracked, ref, prob.roots, opt.workers);
                    for (auto& t : tracked) sols.push_back(std::move(t));
                    polish_all(prob, sols);
                    dedup(sols);
                } catch (const path_through_discriminant_error&) {
                    // fall through with whatever multistart produced
                }
            }
        }
    }

    Polynomial<Complex> target = Polynomial<Complex>::from_roots(
        std::vector<Complex>(roots.begin(), roots.end()));
    return assemble_fiber(prob, target, sols);
}

WronskiFiber inverse_wronski(const Polynomial<Complex>& w, int n, int d, const InverseOptions& opt) {
    const int N = (n + 1) * (d - n);
    if (w.degree() != N)
        throw std::invalid_argument("inverse_wronski: target degree must be (n+1)(d-n)");
    RootMultiset rm = find_roots(w);
    for (const auto& [z, m] : rm.roots)
        if (m > 1)
            throw unsupported_input_error(
                "inverse_wronski: repeated root in the target Wronskian (nonreduced fiber)");
    return inverse_wronski_from_roots(root_list(rm), n, d, opt);
}

bool is_real_space(const PolySpace<Complex>& p, double tol) {
    for (const auto& f : p.basis)
        for (const Complex& c : f.coeffs()) {
            double im = std::abs(c.imag().convert_to<double>());
            if (im >= tol * std::max(1.0, mag_d(c))) return false;
        }
    return true;
}

RootPath RootPath::line(std::vector<Complex> from, std::vector<Complex> to) {
    RootPath p;
    p.waypoints.push_back(std::move(from));
    p.waypoints.push_back(std::move(to));
    return p;
}

RootPath RootPath::exchange_loop(const std::vector<Complex>& roots, int k, int arc_samples) {
    if (k < 0 || k + 1 >= int(roots.size()))
        throw std::invalid_argument("exchange_loop: bad index");
    RootPath p;
    const Complex a = roots[k], b = roots[k + 1];
    const Complex center = (a + b) / Complex(2), radius = (a - b) / Complex(2);
    for (int s = 0; s <= arc_samples; ++s) {
        double ang = M_PI * s / double(arc_samples);
        Complex rot(std::cos(ang), std::sin(ang));
        std::vector<Complex> w = roots;
        w[k] = center + radius * rot;
        w[k + 1] = center - radius * rot;
        p.waypoints.push_back(std::move(w));
    }
    return p;
}

RootPath RootPath::then(const RootPath& next) const {
    RootPath out = *this;
    for (std::size_t i = 1; i < next.waypoints.size(); ++i) out.waypoints.push_back(next.waypoints[i]);
    return out;
}

ContinuationResult continue_fiber(const WronskiFiber& fiber, const RootPath& path,
                                  const InverseOptions& opt) {
    if (!fiber.complete) throw std::invalid_argument("continue_fiber: fiber must be complete");
    if (path.waypoints.size() < 2) throw std::invalid_argument("continue_fiber: empty path");

    std::vector<std::vector<Complex>> start_coords, coords;
    for (const auto& s : fiber.solutions) start_coords.push_back(space_coords(s));
    coords = start_coords;

    for (std::size_t wp = 0; wp + 1 < path.waypoints.size(); ++wp)
        continue_segment(fiber.n, fiber.d, coords, path.waypoints[wp], path.waypoints[wp + 1],
                         opt.workers);

    const std::vector<Complex>& end_roots = path.waypoints.back();
    NormalizedProblem prob = make_problem(end_roots, fiber.n, fiber.d);
    // undo the normalization expectation: continuation ran in raw coordinates,
    // so polish against the raw scaled target
    NormalizedProblem raw = prob;
    raw.scale = Complex(1);
    raw.roots = end_roots;
    std::vector<int> degs(fiber.n + 1);
    for (int i = 0; i <= fiber.n; ++i) degs[i] = fiber.d - fiber.n + i;
    raw.scaled_target =
        Polynomial<Complex>::from_roots(end_roots) * Complex(wronskian_monomial_constant(degs));
    raw.scaled_target_d = to_cdouble_poly(raw.scaled_target);

    std::vector<std::optional<std::vector<Complex>>> polished(coords.size());
    parallel_for(coords.size(), [&](std::size_t i) {
        polished[i] =
            newton_solve<Complex>(fiber.n, fiber.d, coords[i], raw.scaled_target, 40, kPolishTol);
    });
    std::vector<std::vector<Complex>> kept(coords.size());
    for (std::size_t i = 0; i < polished.size(); ++i) {
        if (!polished[i])
            throw path_through_discriminant_error("continuation endpoint failed to polish");
        kept[i] = std::move(*polished[i]);
    }

    ContinuationResult res;
    res.end_fiber.n = fiber.n;
    res.end_fiber.d = fiber.d;
    res.end_fiber.target = Polynomial<Complex>::from_roots(end_roots);
    res.end_fiber.expected = fiber.expected;
    const double tscale = std::max(1.0, raw.scaled_target.max_coeff_mag());
    for (auto& u : kept) {
        std::vector<Complex> r = wronski_residual(fiber.n, fiber.d, u, raw.scaled_target);
        double rmag = 0;
        for (const Complex& v : r) rmag = std::max(rmag, mag_d(v));
        res.end_fiber.residuals.push_back(rmag / tscale);
        res.end_fiber.solutions.emplace_back(fiber.n, fiber.d,
                                             basis_from_coords(fiber.n, fiber.d, u));
    }
    res.end_fiber.complete = long(res.end_fiber.solutions.size()) == fiber.expected;

    // loop detection: end roots equal start roots as a multiset
    std::vector<Complex> start_roots = path.waypoints.front();
    std::vector<bool> taken(start_roots.size(), false);
    bool is_loop = true;
    double rscale = 1;
    for (const Complex& r : start_roots) rscale = std::max(rscale, mag_d(r));
    for (const Complex& e : end_roots) {
        bool matched = false;
        for (std::size_t i = 0; i < start_roots.size(); ++i) {
            if (taken[i]) continue;
            if (mag_d(Complex(e - start_roots[i])) < 1e-9 * rscale) {
                taken[i] = true;
                matched = true;
                break;
            }
        }
        if (!matched) { is_loop = false; break; }
    }
    res.is_loop = is_loop;
    if (is_loop) {
        res.permutation.assign(kept.size(), -1);
        std::vector<bool> used(start_coords.size(), false);
        for (std::size_t i = 0; i < kept.size(); ++i) {
            int best = -1;
            double bestd = 0;
            for (std::size_t j = 0; j < start_coords.size(); ++j) {
                double dd = coords_distance(kept[i], start_coords[j]);
                if (best < 0 || dd < bestd) { best = int(j); bestd = dd; }
            }
            if (best < 0 || used[best] || bestd > 1e-6 * coords_scale(kept[i]))
                throw path_through_discriminant_error(
                    "loop endpoint does not match the start fiber bijectively");
            used[best] = true;
            res.permutation[i] = best;
        }
    }
    return res;
}

double jacobian_min_sv(const PolySpace<Complex>& p) {
    std::vector<Complex> u = space_coords(p);
    Mat<Complex> jac = wronski_jacobian(p.n, p.d, u);
    const int N = int(jac.size());
    Eigen::MatrixXcd J(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) J(i, j) = to_cdouble(jac[i][j]);
    // componentwise-relative scaling: columns weighted by the coordinate
    // magnitudes, rows normalized, so the verdict is unit-free
    for (int j = 0; j < N; ++j) J.col(j) *= std::max(1e-300, mag_d(u[j]));
    for (int i = 0; i < N; ++i) {
        double norm = J.row(i).cwiseAbs().maxCoeff();
        if (norm > 0) J.row(i) /= norm;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(N - 1);
    return smax > 0 ? smin / smax : 0.0;
}

ClusteredReport clustered_reality_probe(int n, int d, double ratio, const InverseOptions& opt) {
    if (ratio <= 1) throw std::invalid_argument("clustered_reality_probe: ratio must exceed 1");
    const int N = (n + 1) * (d - n);
    ClusteredReport rep;
    for (int k = 1; k <= N; ++k) rep.roots.push_back(Complex(std::pow(ratio, k)));
    WronskiFiber fiber = inverse_wronski_from_roots(rep.roots, n, d, opt);
    rep.expected = fiber.expected;
    rep.found = int(fiber.solutions.size());
    rep.complete = fiber.complete;
    rep.min_jacobian_sv = 1;
    for (const auto& s : fiber.solutions) {
        if (is_real_space(s)) ++rep.real_count;
        rep.min_jacobian_sv = std::min(rep.min_jacobian_sv, jacobian_min_sv(s));
    }
    return rep;
}

nlohmann::json fiber_to_json(const WronskiFiber& fiber) {
    nlohmann::json sols = nlohmann::json::array();
    for (std::size_t i = 0; i < fiber.solutions.size(); ++i) {
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& f : fiber.solutions[i].basis) basis.push_back(poly_to_json(f));
        sols.push_back({{"basis", basis},
                        {"real", is_real_space(fiber.solutions[i])},
                        {"residual", fiber.residuals[i]}});
    }
    return {{"n", fiber.n},          {"d", fiber.d},
            {"target", poly_to_json(fiber.target)}, {"expected", fiber.expected},
            {"complete", fiber.complete},           {"solutions", sols}};
}

}  // namespace wronskit
