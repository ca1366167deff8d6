#include "wronskit/bethe.hpp"

#include "wronskit/util.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace wronskit {

MasterParams::MasterParams(int n_, int d_, std::vector<Complex> s_) : n(n_), d(d_), s(std::move(s_)) {
    if (!(0 < n && n < d)) throw std::invalid_argument("master function needs 0 < n < d");
    if (int(s.size()) != (n + 1) * (d - n))
        throw std::invalid_argument("master function needs (n+1)(d-n) parameters");
    double scale = 1;
    for (const Complex& v : s) scale = std::max(scale, mag_d(v));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (mag_d(Complex(s[i] - s[j])) < 1e-10 * scale)
                throw near_degenerate_error("master function parameters nearly coincide");
}

void CriticalPoint::canonicalize() {
    double scale = 1;
    for (const auto& level : levels)
        for (const Complex& v : level) scale = std::max(scale, mag_d(v));
    const Real tol = Real(1e-9 * scale);
    for (auto& level : levels)
        std::sort(level.begin(), level.end(), [&](const Complex& a, const Complex& b) {
            if (abs(a.real() - b.real()) > tol) return a.real() < b.real();
            return a.imag() < b.imag();
        });
}

std::vector<Complex> CriticalPoint::flat() const {
    std::vector<Complex> out;
    for (const auto& level : levels) out.insert(out.end(), level.begin(), level.end());
    return out;
}

CriticalPoint CriticalPoint::from_flat(const std::vector<Complex>& x, const MasterParams& mp) {
    CriticalPoint cp;
    std::size_t pos = 0;
    for (int i = 1; i <= mp.n; ++i) {
        cp.levels.emplace_back(x.begin() + pos, x.begin() + pos + mp.level_size(i));
        pos += mp.level_size(i);
    }
    if (pos != x.size()) throw std::invalid_argument("critical point: wrong variable count");
    return cp;
}

double critical_distance(const CriticalPoint& a, const CriticalPoint& b) {
    std::vector<Complex> fa = a.flat(), fb = b.flat();
    if (fa.size() != fb.size()) return std::numeric_limits<double>::infinity();
    double m = 0;
    for (std::size_t i = 0; i < fa.size(); ++i) m = std::max(m, mag_d(Complex(fa[i] - fb[i])));
    return m;
}

namespace {

void check_shape(const CriticalPoint& x, const MasterParams& mp) {
    if (int(x.levels.size()) != mp.n) throw std::invalid_argument("critical point: wrong level count");
    for (int i = 1; i <= mp.n; ++i)
        if (int(x.levels[i - 1].size()) != mp.level_size(i))
            throw std::invalid_argument("critical point: wrong level size");
}

double config_scale(const CriticalPoint& x, const MasterParams& mp) {
    double scale = 1;
    for (const auto& lv : x.levels)
        for (const Complex& v : lv) scale = std::max(scale, mag_d(v));
    for (const Complex& v : mp.s) scale = std::max(scale, mag_d(v));
    return scale;
}

void check_denominators(const CriticalPoint& x, const MasterParams& mp) {
    const double tol = 1e-14 * config_scale(x, mp);
    for (int i = 1; i < mp.n; ++i)
        for (const Complex& a : x.levels[i - 1])
            for (const Complex& b : x.levels[i])
                if (mag_d(Complex(a - b)) < tol)
                    throw singular_configuration_error("adjacent-level variables coincide");
    for (const Complex& a : x.levels[mp.n - 1])
        for (const Complex& sk : mp.s)
            if (mag_d(Complex(a - sk)) < tol)
                throw singular_configuration_error("top-level variable meets a parameter");
    for (const auto& lv : x.levels)
        for (std::size_t i = 0; i < lv.size(); ++i)
            for (std::size_t j = i + 1; j < lv.size(); ++j)
                if (mag_d(Complex(lv[i] - lv[j])) < tol)
                    throw singular_configuration_error("same-level variables coincide");
}

// flat-layout description of the variable grid, with parameters converted to T
template <class T>
struct FlatSystem {
    int n = 0;
    std::vector<int> level_of;   // variable -> level (1-based)
    std::vector<int> level_off;  // level (1-based) -> offset of its first variable
    std::vector<int> level_sz;
    std::vector<T> s;
    double scale = 1;
};

template <class T>
FlatSystem<T> make_flat(const MasterParams& mp) {
    FlatSystem<T> fs;
    fs.n = mp.n;
    fs.level_off.assign(mp.n + 2, 0);
    fs.level_sz.assign(mp.n + 2, 0);
    int off = 0;
    for (int i = 1; i <= mp.n; ++i) {
        fs.level_off[i] = off;
        fs.level_sz[i] = mp.level_size(i);
        for (int j = 0; j < mp.level_size(i); ++j) fs.level_of.push_back(i);
        off += mp.level_size(i);
    }
    for (const Complex& v : mp.s) {
        if constexpr (std::is_same_v<T, Complex>) fs.s.push_back(v);
        else fs.s.push_back(to_cdouble(v));
        fs.scale = std::max(fs.scale, mag_d(v));
    }
    return fs;
}

// gradient of log Phi; returns false when a denominator is (nearly) zero
template <class T>
bool flat_residual(const FlatSystem<T>& fs, const std::vector<T>& x, std::vector<T>& r) {
    const double tol = 1e-14 * fs.scale;
    const int N = int(x.size());
    r.assign(N, T(0));
    for (int a = 0; a < N; ++a) {
        int lv = fs.level_of[a];
        T g(0);
        for (int b = fs.level_off[lv]; b < fs.level_off[lv] + fs.level_sz[lv]; ++b) {
            if (b == a) continue;
            T diff = x[a] - x[b];
            if (mag_d(diff) < tol) return false;
            g += T(2) / diff;
        }
        for (int adj : {lv - 1, lv + 1}) {
            if (adj < 1 || adj > fs.n) continue;
            for (int b = fs.level_off[adj]; b < fs.level_off[adj] + fs.level_sz[adj]; ++b) {
                T diff = x[a] - x[b];
                if (mag_d(diff) < tol) return false;
                g -= T(1) / diff;
            }
        }
        if (lv == fs.n)
            for (const T& sk : fs.s) {
                T diff = x[a] - sk;
                if (mag_d(diff) < tol) return false;
                g -= T(1) / diff;
            }
        r[a] = g;
    }
    return true;
}

template <class T>
bool flat_hessian(const FlatSystem<T>& fs, const std::vector<T>& x, Mat<T>& h) {
    const double tol = 1e-14 * fs.scale;
    const int N = int(x.size());
    h.assign(N, std::vector<T>(N, T(0)));
    auto sq = [](const T& z) { return z * z; };
    for (int a = 0; a < N; ++a) {
        int lv = fs.level_of[a];
        T diag(0);
        for (int b = fs.level_off[lv]; b < fs.level_off[lv] + fs.level_sz[lv]; ++b) {
            if (b == a) continue;
            T diff = x[a] - x[b];
            if (mag_d(diff) < tol) return false;
            diag -= T(2) / sq(diff);
            h[a][b] = T(2) / sq(diff);
        }
        for (int adj : {lv - 1, lv + 1}) {
            if (adj < 1 || adj > fs.n) continue;
            for (int b = fs.level_off[adj]; b < fs.level_off[adj] + fs.level_sz[adj]; ++b) {
                T diff = x[a] - x[b];
                if (mag_d(diff) < tol) return false;
                diag += T(1) / sq(diff);
                h[a][b] = T(-1) / sq(diff);
            }
        }
        if (lv == fs.n)
            for (const T& sk : fs.s) {
                T diff = x[a] - sk;
                if (mag_d(diff) < tol) return false;
                diag += T(1) / sq(diff);
            }
        h[a][a] = diag;
    }
    return true;
}

// damped Newton on the critical equations
template <class T>
std::optional<std::vector<T>> newton_flat(const FlatSystem<T>& fs, std::vector<T> x, int max_iter,
                                          double rel_tol) {
    const int N = int(x.size());
    std::vector<T> r;
    Mat<T> h;
    for (int it = 0; it < max_iter; ++it) {
        if (!flat_residual(fs, x, r)) return std::nullopt;
        double rmag = 0;
        for (const T& v : r) rmag = std::max(rmag, mag_d(v));
        if (rmag <= rel_tol) return x;
        if (!flat_hessian(fs, x, h)) return std::nullopt;
        std::vector<T> step;
        try {
            step = lu_solve_vec(h, r);
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
        double smag = 0;
        for (const T& v : step) smag = std::max(smag, mag_d(v));
        if (!(smag == smag)) return std::nullopt;
        // keep steps below the configuration scale so variables cannot jump
        // across each other in one stride
        double damp = smag > 0.5 * fs.scale ? 0.5 * fs.scale / smag : 1.0;
        for (int i = 0; i < N; ++i) x[i] -= T(damp) * step[i];
        if (smag * damp < 1e-18 * fs.scale && rmag > 1e-6) return std::nullopt;  // stagnated
    }
    if (flat_residual(fs, x, r)) {
        double rmag = 0;
        for (const T& v : r) rmag = std::max(rmag, mag_d(v));
        if (rmag <= rel_tol) return x;
    }
    return std::nullopt;
}

void dedup_orbits(std::vector<CriticalPoint>& pts) {
    std::vector<CriticalPoint> uniq;
    for (auto& p : pts) {
        bool dup = false;
        for (const auto& q : uniq)
            if (critical_distance(p, q) < 1e-8) { dup = true; break; }
        if (!dup) uniq.push_back(std::move(p));
    }
    std::sort(uniq.begin(), uniq.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        auto fa = a.flat(), fb = b.flat();
        for (std::size_t i = 0; i < fa.size(); ++i) {
            if (fa[i].real() != fb[i].real()) return fa[i].real() < fb[i].real();
            if (fa[i].imag() != fb[i].imag()) return fa[i].imag() < fb[i].imag();
        }
        return false;
    });
    pts = std::move(uniq);
}

void check_nondegenerate(const std::vector<CriticalPoint>& pts, const MasterParams& mp) {
    FlatSystem<Complex> fs = make_flat<Complex>(mp);
    for (const auto& p : pts) {
        Mat<Complex> h;
        if (!flat_hessian(fs, p.flat(), h))
            throw near_degenerate_error("critical point sits on a singular configuration");
        try {
            Mat<Complex> inv = lu_solve(h, mat_identity<Complex>(h.size()));
            if (mat_max_mag(h) * mat_max_mag(inv) > 1e14)
                throw near_degenerate_error("critical point has a nearly degenerate Hessian");
        } catch (const near_degenerate_error&) {
            throw;
        } catch (const std::runtime_error&) {
            throw near_degenerate_error("critical point Hessian is singular");
        }
    }
}

// interlacing-style start: top level seeded at gaps of the sorted parameters,
// lower levels at gaps of the level above
std::vector<CDouble> interlacing_start(const MasterParams& mp, Rng& rng) {
    std::vector<double> sv;
    for (const Complex& v : mp.s) sv.push_back(to_cdouble(v).real());
    std::sort(sv.begin(), sv.end());
    double spread = std::max(1e-3, sv.back() - sv.front());
    std::vector<std::vector<CDouble>> levels(mp.n + 1);
    // top level n: choose level_size(n) of the s-gap midpoints
    std::vector<double> anchors;
    for (std::size_t i = 0; i + 1 < sv.size(); ++i) anchors.push_back((sv[i] + sv[i + 1]) / 2);
    for (int lv = mp.n; lv >= 1; --lv) {
        int need = mp.level_size(lv);
        std::vector<double> chosen;
        std::vector<int> idx(anchors.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
        for (int pick = 0; pick < need; ++pick) {
            int at = rng.uniform_int(0, int(idx.size()) - 1);
            chosen.push_back(anchors[idx[at]]);
            idx.erase(idx.begin() + at);
            if (idx.empty()) {
                for (std::size_t i = 0; i < anchors.size(); ++i) idx.push_back(int(i));
            }
        }
        std::vector<CDouble> pts;
        double jitter = 0.08 * spread / std::max(1, need);
        for (double c : chosen)
            pts.push_back(CDouble(c + jitter * rng.normal(), jitter * rng.normal()));
        levels[lv] = pts;
        // anchors for the next level down: midpoints of this level
        std::vector<double> next;
        std::vector<double> re;
        for (const CDouble& z : pts) re.push_back(z.real());
        std::sort(re.begin(), re.end());
        next.push_back(re.front() - 0.2 * spread);
        for (std::size_t i = 0; i + 1 < re.size(); ++i) next.push_back((re[i] + re[i + 1]) / 2);
        next.push_back(re.back() + 0.2 * spread);
        anchors = std::move(next);
    }
    std::vector<CDouble> flat;
    for (int lv = 1; lv <= mp.n; ++lv) flat.insert(flat.end(), levels[lv].begin(), levels[lv].end());
    return flat;
}

}  // namespace

Complex master_value_direct(const CriticalPoint& x, const MasterParams& mp) {
    check_shape(x, mp);
    check_denominators(x, mp);
    Complex num(1);
    for (const auto& lv : x.levels)
        for (std::size_t j = 0; j < lv.size(); ++j)
            for (std::size_t k = j + 1; k < lv.size(); ++k) {
                Complex diff = lv[j] - lv[k];
                num *= diff * diff;
            }
    for (std::size_t j = 0; j < mp.s.size(); ++j)
        for (std::size_t k = j + 1; k < mp.s.size(); ++k) {
            Complex diff = mp.s[j] - mp.s[k];
            num *= diff * diff;
        }
    Complex den(1);
    for (int i = 1; i < mp.n; ++i)
        for (const Complex& a : x.levels[i - 1])
            for (const Complex& b : x.levels[i]) den *= (a - b);
    for (const Complex& a : x.levels[mp.n - 1])
        for (const Complex& sk : mp.s) den *= (a - sk);
    return num / den;
}

Complex master_value_resultant(const CriticalPoint& x, const MasterParams& mp) {
    check_shape(x, mp);
    check_denominators(x, mp);
    std::vector<Polynomial<Complex>> ps;
    for (const auto& lv : x.levels) ps.push_back(Polynomial<Complex>::from_roots(lv));
    ps.push_back(Polynomial<Complex>::from_roots(mp.s));
    Complex num(1), den(1);
    for (const auto& p : ps) num *= discriminant(p);
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) den *= resultant(ps[i], ps[i + 1]);
    return num / den;
}

Complex master_value(const CriticalPoint& x, const MasterParams& mp) {
    Complex a = master_value_direct(x, mp);
    Complex b = master_value_resultant(x, mp);
    if (abs(a - b) > Real(1e-20) * (abs(a) + abs(b)))
        throw std::logic_error("master function evaluation routes disagree");
    return a;
}

std::vector<Complex> bethe_residual(const CriticalPoint& x, const MasterParams& mp) {
    check_shape(x, mp);
    check_denominators(x, mp);
    FlatSystem<Complex> fs = make_flat<Complex>(mp);
    std::vector<Complex> r;
    if (!flat_residual(fs, x.flat(), r))
        throw singular_configuration_error("denominator vanishes");
    return r;
}

Mat<Complex> bethe_hessian(const CriticalPoint& x, const MasterParams& mp) {
    check_shape(x, mp);
    check_denominators(x, mp);
    FlatSystem<Complex> fs = make_flat<Complex>(mp);
    Mat<Complex> h;
    if (!flat_hessian(fs, x.flat(), h))
        throw singular_configuration_error("denominator vanishes");
    return h;
}

std::vector<CriticalPoint> solve_critical_newton(const MasterParams& mp,
                                                 const SolveCriticalOptions& opt) {
    const long expected = degree_iota(mp.n, mp.d);
    const int N = mp.var_count();
    FlatSystem<CDouble> fsd = make_flat<CDouble>(mp);
    FlatSystem<Complex> fsc = make_flat<Complex>(mp);

    std::vector<CriticalPoint> found;
    const long budget = std::max<long>(opt.starts_per_orbit * expected, 64);
    long used = 0;
    while (long(found.size()) < expected && used < budget) {
        int batch = int(std::min<long>(budget - used, std::max<long>(8 * expected, 32)));
        std::vector<std::optional<std::vector<CDouble>>> results(batch);
        parallel_for(
            batch,
            [&](std::size_t idx) {
                Rng rng(derive_seed(opt.seed, 10000 + used + idx));
                std::vector<CDouble> x0;
                if (rng.uniform() < 0.7) {
                    x0 = interlacing_start(mp, rng);
                } else {
                    x0.resize(N);
                    for (int i = 0; i < N; ++i) {
                        CDouble base = fsd.s[rng.uniform_int(0, int(fsd.s.size()) - 1)];
                        double j = 0.4 * fsd.scale;
                        x0[i] = base + CDouble(j * rng.normal(), j * rng.normal());
                    }
                }
                results[idx] = newton_flat(fsd, std::move(x0), 200, 1e-11);
            },
            opt.workers);
        for (auto& r : results) {
            if (!r) continue;
            std::vector<Complex> xc(r->size());
            for (std::size_t i = 0; i < r->size(); ++i) xc[i] = to_complex((*r)[i]);
            auto polished = newton_flat(fsc, std::move(xc), 40, 1e-30);
            if (!polished) continue;
            CriticalPoint cp = CriticalPoint::from_flat(*polished, mp);
            cp.canonicalize();
            found.push_back(std::move(cp));
        }
        dedup_orbits(found);
        used += batch;
    }
    check_nondegenerate(found, mp);
    return found;
}

std::vector<CriticalPoint> solve_critical(const MasterParams& mp, const SolveCriticalOptions& opt) {
    const long expected = degree_iota(mp.n, mp.d);

    // primary route: inverse Wronski fiber, read off through the
    // fundamental-space dictionary
    InverseOptions io;
    io.seed = opt.seed;
    io.starts_per_orbit = opt.starts_per_orbit;
    io.workers = opt.workers;
    WronskiFiber fiber = inverse_wronski_from_roots(mp.s, mp.n, mp.d, io);
    FlatSystem<Complex> fsc = make_flat<Complex>(mp);
    std::vector<CriticalPoint> pts;
    for (const auto& sol : fiber.solutions) {
        std::vector<Polynomial<Complex>> ps = recover_critical(sol);
        CriticalPoint cp;
        for (const auto& p : ps) cp.levels.push_back(root_list(find_roots(p)));
        auto polished = newton_flat(fsc, cp.flat(), 40, 1e-30);
        if (!polished) continue;
        cp = CriticalPoint::from_flat(*polished, mp);
        cp.canonicalize();
        pts.push_back(std::move(cp));
    }
    dedup_orbits(pts);
    if (long(pts.size()) != expected) throw incomplete_solve_error(long(pts.size()), expected);
    check_nondegenerate(pts, mp);

    if (opt.cross_validate) {
        std::vector<CriticalPoint> direct = solve_critical_newton(mp, opt);
        if (direct.size() != pts.size())
            throw incomplete_solve_error(long(direct.size()), expected);
        for (const auto& p : pts) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : direct) best = std::min(best, critical_distance(p, q));
            if (best > 1e-10)
                throw std::logic_error("critical-point routes disagree on an orbit");
        }
    }
    return pts;
}

FundamentalOperator fundamental_operator(const CriticalPoint& x, const MasterParams& mp) {
    check_shape(x, mp);
    FundamentalOperator fo;
    for (const auto& lv : x.levels) fo.p.push_back(Polynomial<Complex>::from_roots(lv));
    fo.w = Polynomial<Complex>::from_roots(mp.s);
    return fo;
}

template <class T>
PolySpace<T> kernel_polynomials(const FundamentalOp<T>& fo) {
    const int n = int(fo.p.size());
    const int d = fo.w.degree() / (n + 1) + n;
    if (fo.w.degree() != (n + 1) * (d - n))
        throw std::invalid_argument("kernel_polynomials: inconsistent degrees");
    ScalarDiffOp<T> op = fundamental_diff_op(fo);
    // apply to t^k for k = 0..d; the denominators agree by construction
    std::vector<RationalFn<T>> images;
    for (int k = 0; k <= d; ++k) images.push_back(op.apply(RationalFn<T>(Polynomial<T>::monomial(k))));
    int maxdeg = 0;
    for (const auto& im : images) maxdeg = std::max(maxdeg, im.num.degree());
    Mat<T> m(maxdeg + 1, std::vector<T>(d + 1, T(0)));
    for (int k = 0; k <= d; ++k)
        for (int r = 0; r <= images[k].num.degree(); ++r) m[r][k] = images[k].num.coeff(r);
    double tol = scalar_traits<T>::is_exact ? 0.0 : 1e-25;
    std::vector<std::vector<T>> null = null_space(m, tol);
    if (int(null.size()) != n + 1)
        throw not_critical_error("fundamental operator kernel has dimension " +
                                 std::to_string(null.size()) + ", expected " + std::to_string(n + 1));
    std::vector<Polynomial<T>> span;
    for (auto& v : null) span.push_back(Polynomial<T>(std::move(v)));
    auto space = make_poly_space<T>(n, d, span, 1e-9);
    if (!space) throw not_critical_error("kernel is not a big-cell space");
    return *space;
}

template PolySpace<Rat> kernel_polynomials<Rat>(const FundamentalOp<Rat>&);
template PolySpace<Complex> kernel_polynomials<Complex>(const FundamentalOp<Complex>&);

PolySpace<Complex> kernel_polynomials(const FundamentalOperator& fo) {
    return kernel_polynomials<Complex>(fo);
}

std::vector<Polynomial<Complex>> recover_critical(const PolySpace<Complex>& p) {
    // hypotheses: square-free basis entries, coprime consecutive pairs
    std::vector<RootMultiset> broots;
    for (int i = 0; i <= p.n; ++i) {
        RootMultiset rm = find_roots(p.basis[i]);
        for (const auto& [z, m] : rm.roots)
            if (m > 1)
                throw hypotheses_not_met_error("basis polynomial f_" + std::to_string(i) +
                                               " is not square-free");
        broots.push_back(std::move(rm));
    }
    for (int i = 0; i + 1 <= p.n; ++i) {
        double scale = 1;
        for (const auto& [z, m] : broots[i].roots) scale = std::max(scale, mag_d(z));
        for (const auto& [z1, m1] : broots[i].roots)
            for (const auto& [z2, m2] : broots[i + 1].roots)
                if (mag_d(Complex(z1 - z2)) < 1e-12 * scale)
                    throw hypotheses_not_met_error("basis polynomials f_" + std::to_string(i) +
                                                   ", f_" + std::to_string(i + 1) +
                                                   " share a root");
    }
    std::vector<Polynomial<Complex>> out;
    std::vector<Polynomial<Complex>> prefix;
    for (int i = 0; i < p.n; ++i) {
        prefix.push_back(p.basis[i]);
        out.push_back(wronskian(prefix).monic());
    }
    return out;
}

template <class T>
FactorizationReport factorization_identity_check(const PolySpace<T>& space, std::uint64_t seed) {
    const int n = space.n, d = space.d;
    FactorizationReport rep;

    // determinant operator: coefficient of (d/dt)^k is (-1)^(n+1+k) times the
    // minor that deletes derivative order k
    std::vector<Polynomial<T>> dhat(n + 2);
    for (int k = 0; k <= n + 1; ++k) {
        std::vector<std::vector<Polynomial<T>>> m(n + 1, std::vector<Polynomial<T>>(n + 1));
        for (int col = 0; col <= n; ++col) {
            Polynomial<T> der = space.basis[col];
            int row = 0;
            for (int ord = 0; ord <= n + 1; ++ord) {
                if (ord != k) m[row++][col] = der;
                der = der.derivative();
            }
        }
        Polynomial<T> minor = poly_matrix_det(m);
        dhat[k] = ((n + 1 + k) % 2) ? -minor : minor;
    }
    auto apply_dhat = [&](const Polynomial<T>& q) {
        Polynomial<T> acc, der = q;
        for (int k = 0; k <= n + 1; ++k) {
            acc += dhat[k] * der;
            der = der.derivative();
        }
        return acc;
    };

    double scale = 1;
    for (const auto& f : space.basis) scale = std::max(scale, f.max_coeff_mag());
    for (const auto& c : dhat) scale = std::max(scale, c.max_coeff_mag());

    rep.annihilates_basis = true;
    for (const auto& f : space.basis) {
        Polynomial<T> img = apply_dhat(f);
        if (img.max_coeff_mag() > 1e-20 * scale * std::max(1.0, f.max_coeff_mag()))
            rep.annihilates_basis = false;
    }

    Rng rng(seed);
    {
        // perturb a basis member into a non-member: a non-pivot degree when
        // one exists, else a degree beyond the ambient bound
        int perturb_deg = d - n - 1 >= 0 ? d - n - 1 : d + 1;
        if (d - n == 0) perturb_deg = d + 1;  // the space is all of the ambient
        Polynomial<T> q = space.basis[0];
        q += Polynomial<T>::monomial(perturb_deg, T(1)) * T(long(1 + rng.uniform_int(1, 7)));
        Polynomial<T> img = apply_dhat(q);
        rep.rejects_nonmember = img.max_coeff_mag() > 1e-10 * scale;
    }

    // factored chain built from p_{i+1} = Wr(f_0..f_i); log-derivatives ignore
    // the scalar normalization, so the non-monic chain is fine
    std::vector<Polynomial<T>> prefix;
    FundamentalOp<T> fo;
    for (int i = 0; i <= n; ++i) {
        prefix.push_back(space.basis[i]);
        Polynomial<T> w = wronskian(prefix);
        if (i < n) fo.p.push_back(w);
        else fo.w = w;
    }
    Polynomial<T> wr = fo.w;  // leading coefficient of the determinant operator
    ScalarDiffOp<T> chain = fundamental_diff_op(fo);

    rep.factors_match = true;
    rep.max_deviation = 0;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<T> qc(3 + (trial % (d + 1)));
        for (auto& c : qc) c = T(long(rng.uniform_int(-9, 9)));
        Polynomial<T> q(std::move(qc));
        if (q.is_zero()) q = Polynomial<T>::one();
        Polynomial<T> lhs = apply_dhat(q);                  // a polynomial
        RationalFn<T> rhs = chain.apply(RationalFn<T>(q));  // N/V
        for (int pt = 0; pt < 20; ++pt) {
            T t0 = T(long(rng.uniform_int(2, 200))) / T(7);
            T den = rhs.den.eval(t0);
            if (scalar_traits<T>::is_zero(den, scale)) continue;
            T a = lhs.eval(t0) * den;
            T b = wr.eval(t0) * rhs.num.eval(t0);
            double dev = mag_d(T(a - b));
            double ref = std::max(mag_d(a), mag_d(b));
            double rel = ref > 0 ? dev / ref : dev;
            rep.max_deviation = std::max(rep.max_deviation, rel);
            if (rel > 1e-18) rep.factors_match = false;
        }
    }
    return rep;
}

template FactorizationReport factorization_identity_check<Rat>(const PolySpace<Rat>&, std::uint64_t);
template FactorizationReport factorization_identity_check<Complex>(const PolySpace<Complex>&,
                                                                   std::uint64_t);

nlohmann::json critical_point_to_json(const CriticalPoint& x) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& lv : x.levels) {
        nlohmann::json l = nlohmann::json::array();
        for (const Complex& z : lv)
            l.push_back({z.real().convert_to<double>(), z.imag().convert_to<double>()});
        levels.push_back(l);
    }
    return levels;
}

}  // namespace wronskit
