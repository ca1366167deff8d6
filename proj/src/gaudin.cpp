#include "wronskit/gaudin.hpp"

#include "wronskit/util.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace wronskit {

GaudinContext::GaudinContext(int n_, std::vector<Complex> s_) : n(n_), m(int(s_.size())), s(std::move(s_)) {
    if (n < 1 || n > 2) throw std::invalid_argument("gaudin context supports n = 1 or 2");
    dim = 1;
    for (int k = 0; k < m; ++k) {
        dim *= (n + 1);
        if (dim * (k + 1 < m ? (n + 1) : 1) > 100000)
            throw std::invalid_argument("gaudin context exceeds the size cap");
    }
    double scale = 1;
    for (const Complex& v : s) scale = std::max(scale, mag_d(v));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (mag_d(Complex(s[i] - s[j])) < 1e-12 * scale)
                throw std::invalid_argument("gaudin marked points must be distinct");
}

long GaudinContext::index(const std::vector<int>& digits_) const {
    long idx = 0, stride = 1;
    for (int k = 0; k < m; ++k) {
        idx += (digits_[k] - 1) * stride;
        stride *= (n + 1);
    }
    return idx;
}

std::vector<int> GaudinContext::digits(long index_) const {
    std::vector<int> out(m);
    for (int k = 0; k < m; ++k) {
        out[k] = int(index_ % (n + 1)) + 1;
        index_ /= (n + 1);
    }
    return out;
}

TensorVector apply_E(const GaudinContext& ctx, int i, int j, int k, const TensorVector& v) {
    TensorVector out(ctx);
    long stride = 1;
    for (int f = 0; f < k; ++f) stride *= (ctx.n + 1);
    for (long idx = 0; idx < ctx.dim; ++idx) {
        const Complex& c = v.coeffs[idx];
        if (c == Complex(0)) continue;
        int a = int((idx / stride) % (ctx.n + 1)) + 1;
        if (i == j) {
            if (a == i) out.coeffs[idx] -= c;
        } else if (a == i) {
            long target = idx + (long(j) - i) * stride;
            Complex sign = ((i + j + 1) % 2 == 0) ? Complex(1) : Complex(-1);
            out.coeffs[target] += sign * c;
        }
    }
    return out;
}

TensorVector apply_E_total(const GaudinContext& ctx, int i, int j, const TensorVector& v) {
    TensorVector out(ctx);
    for (int k = 0; k < ctx.m; ++k) {
        TensorVector part = apply_E(ctx, i, j, k, v);
        for (long idx = 0; idx < ctx.dim; ++idx) out.coeffs[idx] += part.coeffs[idx];
    }
    return out;
}

// --- factored rational functions ------------------------------------------

RatFac ratfac_add(const GaudinContext& ctx, const RatFac& a, const RatFac& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::vector<int> e(ctx.m, 0);
    std::vector<int> ea = a.den_exp, eb = b.den_exp;
    ea.resize(ctx.m, 0);
    eb.resize(ctx.m, 0);
    for (int k = 0; k < ctx.m; ++k) e[k] = std::max(ea[k], eb[k]);
    Polynomial<Complex> na = a.num, nb = b.num;
    for (int k = 0; k < ctx.m; ++k) {
        Polynomial<Complex> lin{Complex(-ctx.s[k]), Complex(1)};
        for (int r = 0; r < e[k] - ea[k]; ++r) na *= lin;
        for (int r = 0; r < e[k] - eb[k]; ++r) nb *= lin;
    }
    return {na + nb, std::move(e)};
}

RatFac ratfac_mul(const RatFac& a, const RatFac& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<int> e = a.den_exp;
    e.resize(std::max(a.den_exp.size(), b.den_exp.size()), 0);
    for (std::size_t k = 0; k < b.den_exp.size(); ++k) e[k] += b.den_exp[k];
    return {a.num * b.num, std::move(e)};
}

RatFac ratfac_derivative(const GaudinContext& ctx, const RatFac& f) {
    if (f.is_zero()) return {};
    std::vector<int> e = f.den_exp;
    e.resize(ctx.m, 0);
    std::vector<int> active;
    for (int k = 0; k < ctx.m; ++k)
        if (e[k] > 0) active.push_back(k);
    // (N / prod (t-s_k)^{e_k})' with every active exponent bumped by one
    Polynomial<Complex> prod_active = Polynomial<Complex>::one();
    for (int k : active) prod_active *= Polynomial<Complex>{Complex(-ctx.s[k]), Complex(1)};
    Polynomial<Complex> num = f.num.derivative() * prod_active;
    for (int k : active) {
        Polynomial<Complex> others = Polynomial<Complex>::one();
        for (int j : active)
            if (j != k) others *= Polynomial<Complex>{Complex(-ctx.s[j]), Complex(1)};
        num -= f.num * Complex(long(e[k])) * others;
    }
    std::vector<int> e2 = e;
    for (int k : active) e2[k] += 1;
    return {std::move(num), std::move(e2)};
}

Complex ratfac_eval(const GaudinContext& ctx, const RatFac& f, const Complex& t0) {
    if (f.is_zero()) return Complex(0);
    Complex num = f.num.eval(t0);
    for (std::size_t k = 0; k < f.den_exp.size(); ++k)
        for (int r = 0; r < f.den_exp[k]; ++r) num /= (t0 - ctx.s[k]);
    return num;
}

// --- operators --------------------------------------------------------------

namespace {

SparseMatRat sparse_add(const GaudinContext& ctx, const SparseMatRat& a, const SparseMatRat& b) {
    SparseMatRat out = a;
    for (const auto& [key, val] : b) {
        auto it = out.find(key);
        if (it == out.end()) out[key] = val;
        else {
            it->second = ratfac_add(ctx, it->second, val);
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

SparseMatRat sparse_mul(const GaudinContext& ctx, const SparseMatRat& a, const SparseMatRat& b) {
    // group b by row for the inner loop
    std::map<long, std::vector<std::pair<long, const RatFac*>>> b_rows;
    for (const auto& [key, val] : b) b_rows[key.first].push_back({key.second, &val});
    SparseMatRat out;
    for (const auto& [key, val] : a) {
        auto it = b_rows.find(key.second);
        if (it == b_rows.end()) continue;
        for (const auto& [col, bval] : it->second) {
            RatFac prod = ratfac_mul(val, *bval);
            if (prod.is_zero()) continue;
            auto ins = out.find({key.first, col});
            if (ins == out.end()) out[{key.first, col}] = std::move(prod);
            else {
                ins->second = ratfac_add(ctx, ins->second, prod);
                if (ins->second.is_zero()) out.erase(ins);
            }
        }
    }
    return out;
}

SparseMatRat sparse_derivative(const GaudinContext& ctx, const SparseMatRat& a) {
    SparseMatRat out;
    for (const auto& [key, val] : a) {
        RatFac d = ratfac_derivative(ctx, val);
        if (!d.is_zero()) out[key] = std::move(d);
    }
    return out;
}

SparseMatRat sparse_identity(const GaudinContext& ctx) {
    SparseMatRat out;
    for (long i = 0; i < ctx.dim; ++i)
        out[{i, i}] = RatFac(Polynomial<Complex>::one(), std::vector<int>(ctx.m, 0));
    return out;
}

SparseMatRat sparse_scale(SparseMatRat a, const Complex& c) {
    for (auto& [key, val] : a) val.num *= c;
    return a;
}

// X_{ij}(t) = delta_{ij} d/dt - sum_k E_{ji}^{(k)} / (t - s_k)
MatRatOperator build_X(const GaudinContext& ctx, int i, int j) {
    MatRatOperator op;
    op.ctx = &ctx;
    op.coeffs.resize(i == j ? 2 : 1);
    SparseMatRat& c0 = op.coeffs[0];
    for (int k = 0; k < ctx.m; ++k) {
        std::vector<int> e(ctx.m, 0);
        e[k] = 1;
        // E_{ji} in the dual normalization; see apply_E
        if (i == j) {
            // E_{ii} v_a = -delta_{ia} v_a: contributes +1/(t-s_k) on digit i
            long stride = 1;
            for (int f = 0; f < k; ++f) stride *= (ctx.n + 1);
            for (long idx = 0; idx < ctx.dim; ++idx) {
                int a = int((idx / stride) % (ctx.n + 1)) + 1;
                if (a == i) {
                    auto ins = c0.find({idx, idx});
                    RatFac term(Polynomial<Complex>::one(), e);
                    if (ins == c0.end()) c0[{idx, idx}] = term;
                    else ins->second = ratfac_add(ctx, ins->second, term);
                }
            }
        } else {
            // -E_{ji}^{(k)}/(t-s_k): E_{ji} v_a = delta_{ja} (-1)^{i+j+1} v_i
            long stride = 1;
            for (int f = 0; f < k; ++f) stride *= (ctx.n + 1);
            Complex sign = ((i + j + 1) % 2 == 0) ? Complex(-1) : Complex(1);  // minus the action sign
            for (long idx = 0; idx < ctx.dim; ++idx) {
                int a = int((idx / stride) % (ctx.n + 1)) + 1;
                if (a != j) continue;
                long target = idx + (long(i) - j) * stride;
                RatFac term(Polynomial<Complex>::constant(sign), e);
                auto ins = c0.find({target, idx});
                if (ins == c0.end()) c0[{target, idx}] = std::move(term);
                else ins->second = ratfac_add(ctx, ins->second, term);
            }
        }
    }
    if (i == j) op.coeffs[1] = sparse_identity(ctx);
    return op;
}

}  // namespace

MatRatOperator compose(const MatRatOperator& a, const MatRatOperator& b) {
    const GaudinContext& ctx = *a.ctx;
    MatRatOperator out;
    out.ctx = a.ctx;
    out.coeffs.resize(a.order() + b.order() + 1);
    for (int j = 0; j <= a.order(); ++j) {
        if (a.coeffs[j].empty()) continue;
        for (int k = 0; k <= b.order(); ++k) {
            SparseMatRat der = b.coeffs[k];
            long binom = 1;
            for (int r = 0; r <= j; ++r) {
                if (!der.empty()) {
                    SparseMatRat term = sparse_mul(ctx, a.coeffs[j], der);
                    if (binom != 1) term = sparse_scale(std::move(term), Complex(binom));
                    out.coeffs[j - r + k] = sparse_add(ctx, out.coeffs[j - r + k], term);
                }
                binom = binom * (j - r) / (r + 1);
                if (r < j) der = sparse_derivative(ctx, der);
            }
        }
    }
    return out;
}

Mat<Complex> eval_matrix(const GaudinContext& ctx, const SparseMatRat& m, const Complex& t0) {
    Mat<Complex> out(ctx.dim, std::vector<Complex>(ctx.dim, Complex(0)));
    for (const auto& [key, val] : m) out[key.first][key.second] += ratfac_eval(ctx, val, t0);
    return out;
}

MatRatOperator build_M(const GaudinContext& ctx) {
    const int n = ctx.n;
    std::vector<int> perm(n + 1);
    std::iota(perm.begin(), perm.end(), 1);
    MatRatOperator m;
    m.ctx = &ctx;
    m.coeffs.resize(n + 2);
    do {
        // sign of the permutation
        int inv = 0;
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (perm[i] > perm[j]) ++inv;
        MatRatOperator term = build_X(ctx, 1, perm[0]);
        for (int row = 1; row <= n; ++row) term = compose(term, build_X(ctx, row + 1, perm[row]));
        if (inv % 2 == 1)
            for (auto& c : term.coeffs) c = sparse_scale(std::move(c), Complex(-1));
        for (int k = 0; k < int(term.coeffs.size()); ++k)
            m.coeffs[k] = sparse_add(ctx, m.coeffs[k], term.coeffs[k]);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return m;
}

const SparseMatRat& coefficient(const MatRatOperator& op, int i) {
    // M = d^{n+1} + M_1 d^n + ... + M_{n+1}
    int order = op.order();
    return op.coeffs[order - i];
}

MatRatOperator conjugate_K(const MatRatOperator& m) {
    const GaudinContext& ctx = *m.ctx;
    const int order = m.order();  // n+1
    MatRatOperator out;
    out.ctx = m.ctx;
    out.coeffs.resize(order + 1);
    for (int i = 0; i <= order; ++i) {
        // term (-1)^i d^{order-i} ∘ M_i, with M_0 the identity
        const SparseMatRat& mi = m.coeffs[order - i];
        if (mi.empty()) continue;
        SparseMatRat der = mi;
        long binom = 1;
        int r = order - i;
        for (int l = 0; l <= r; ++l) {
            if (!der.empty()) {
                SparseMatRat term = der;
                Complex c = Complex(binom) * Complex((i % 2 == 0) ? 1 : -1);
                if (c != Complex(1)) term = sparse_scale(std::move(term), c);
                out.coeffs[r - l] = sparse_add(ctx, out.coeffs[r - l], term);
            }
            binom = binom * (r - l) / (l + 1);
            if (l < r) der = sparse_derivative(ctx, der);
        }
    }
    return out;
}

TensorVector universal_weight_vector(const GaudinContext& ctx, const CriticalPoint& x) {
    const int n = ctx.n, m = ctx.m;
    if (int(x.levels.size()) != n)
        throw std::invalid_argument("universal_weight_vector: rank mismatch");
    const int dn = int(x.levels[0].size());  // d - n
    for (int i = 1; i <= n; ++i)
        if (int(x.levels[i - 1].size()) != i * dn)
            throw std::invalid_argument("universal_weight_vector: level sizes inconsistent");
    if (m != (n + 1) * dn)
        throw std::invalid_argument("universal_weight_vector: factor count mismatch");

    TensorVector out(ctx);

    // enumerate admissible digit words: each value 1..n+1 appears d-n times
    std::vector<int> word;
    for (int v = 1; v <= n + 1; ++v)
        for (int c = 0; c < dn; ++c) word.push_back(v);
    std::sort(word.begin(), word.end());

    do {
        // chains: factor k with word[k] = b <= n needs one variable of each
        // level b..n; enumerate level-wise assignments of variables to chains
        std::vector<std::vector<int>> slots(n + 1);  // level i (1-based): chain list
        for (int k = 0; k < m; ++k)
            for (int i = word[k]; i <= n; ++i) slots[i].push_back(k);
        // assignment per level: permutation of level variables over slots
        std::vector<std::vector<int>> assign(n + 1);
        for (int i = 1; i <= n; ++i) {
            assign[i].resize(slots[i].size());
            std::iota(assign[i].begin(), assign[i].end(), 0);
        }
        Complex wsum(0);
        std::function<void(int)> rec = [&](int level) {
            if (level > n) {
                // value of w(z; s) for this assignment
                Complex w(1);
                // chain variable of factor k at level i: x.levels[i-1][assign[i][pos]]
                std::vector<std::map<int, Complex>> chain_var(n + 1);
                for (int i = 1; i <= n; ++i)
                    for (std::size_t p = 0; p < slots[i].size(); ++p)
                        chain_var[i][slots[i][p]] = x.levels[i - 1][assign[i][p]];
                for (int k = 0; k < m; ++k) {
                    int b = word[k];
                    if (b == n + 1) continue;
                    for (int i = b; i < n; ++i) w /= (chain_var[i][k] - chain_var[i + 1][k]);
                    w /= (chain_var[n][k] - ctx.s[k]);
                }
                wsum += w;
                return;
            }
            std::sort(assign[level].begin(), assign[level].end());
            do {
                rec(level + 1);
            } while (std::next_permutation(assign[level].begin(), assign[level].end()));
        };
        rec(1);

        std::vector<int> dg(word.begin(), word.end());
        out.coeffs[ctx.index(dg)] += wsum;
    } while (std::next_permutation(word.begin(), word.end()));

    if (out.norm() < pow2(-100))
        throw std::logic_error("universal weight function vanished at a purported critical point");
    return out;
}

bool is_singular(const GaudinContext& ctx, const TensorVector& v, double rel_tol) {
    Real scale = v.norm();
    if (scale == 0) return true;
    for (int i = 1; i <= ctx.n; ++i) {
        TensorVector raised = apply_E_total(ctx, i, i + 1, v);
        if (raised.norm() > Real(rel_tol) * scale) return false;
    }
    return true;
}

long sing_dimension(int n, int m, const std::vector<int>& counts) {
    if (int(counts.size()) != n + 1) throw std::invalid_argument("sing_dimension: need n+1 counts");
    if (std::accumulate(counts.begin(), counts.end(), 0) != m)
        throw std::invalid_argument("sing_dimension: counts must sum to m");
    std::vector<Complex> s;
    for (int k = 0; k < m; ++k) s.push_back(Complex(k + 1));
    GaudinContext ctx(n, s);  // marked points are irrelevant for the weight spaces

    // weight-subspace basis: indices whose digit content matches counts
    std::vector<long> sub;
    for (long idx = 0; idx < ctx.dim; ++idx) {
        std::vector<int> cnt(n + 2, 0);
        for (int dg : ctx.digits(idx)) cnt[dg]++;
        bool ok = true;
        for (int a = 1; a <= n + 1; ++a)
            if (cnt[a] != counts[a - 1]) { ok = false; break; }
        if (ok) sub.push_back(idx);
    }
    if (sub.empty()) return 0;

    // stack the raising operators restricted to the subspace
    Mat<Complex> mat(std::size_t(ctx.dim) * n, std::vector<Complex>(sub.size(), Complex(0)));
    for (std::size_t c = 0; c < sub.size(); ++c) {
        TensorVector e(ctx);
        e.coeffs[sub[c]] = Complex(1);
        for (int i = 1; i <= n; ++i) {
            TensorVector img = apply_E_total(ctx, i, i + 1, e);
            for (long r = 0; r < ctx.dim; ++r)
                mat[std::size_t(i - 1) * ctx.dim + r][c] = img.coeffs[r];
        }
    }
    return long(null_space(mat, 1e-12).size());
}

long sing_dimension_zero(int n, int m) {
    if (m % (n + 1) != 0) return 0;
    return sing_dimension(n, m, std::vector<int>(n + 1, m / (n + 1)));
}

std::vector<std::vector<Complex>> singular_weight_zero_basis(const GaudinContext& ctx) {
    const int n = ctx.n, m = ctx.m;
    if (m % (n + 1) != 0) return {};
    std::vector<int> counts(n + 1, m / (n + 1));
    std::vector<long> sub;
    for (long idx = 0; idx < ctx.dim; ++idx) {
        std::vector<int> cnt(n + 2, 0);
        for (int dg : ctx.digits(idx)) cnt[dg]++;
        bool ok = true;
        for (int a = 1; a <= n + 1; ++a)
            if (cnt[a] != counts[a - 1]) { ok = false; break; }
        if (ok) sub.push_back(idx);
    }
    Mat<Complex> mat(std::size_t(ctx.dim) * n, std::vector<Complex>(sub.size(), Complex(0)));
    for (std::size_t c = 0; c < sub.size(); ++c) {
        TensorVector e(ctx);
        e.coeffs[sub[c]] = Complex(1);
        for (int i = 1; i <= n; ++i) {
            TensorVector img = apply_E_total(ctx, i, i + 1, e);
            for (long r = 0; r < ctx.dim; ++r)
                mat[std::size_t(i - 1) * ctx.dim + r][c] = img.coeffs[r];
        }
    }
    auto null = null_space(mat, 1e-12);
    std::vector<std::vector<Complex>> out;
    for (const auto& v : null) {
        std::vector<Complex> full(ctx.dim, Complex(0));
        for (std::size_t c = 0; c < sub.size(); ++c) full[sub[c]] = v[c];
        out.push_back(std::move(full));
    }
    return out;
}

EigenCheckReport eigen_check(const GaudinContext& ctx, const MatRatOperator& k,
                             const TensorVector& v, const FundamentalOperator& fo,
                             const Complex& t0) {
    // poles: marked points, roots of the p_i and of W
    for (const Complex& sk : ctx.s)
        if (mag_d(Complex(t0 - sk)) < 1e-9)
            throw std::invalid_argument("eigen_check: t0 is a marked point");
    for (const auto& p : fo.p)
        if (mag_d(p.eval(t0)) < 1e-9)
            throw std::invalid_argument("eigen_check: t0 is a root of a critical polynomial");
    if (mag_d(fo.w.eval(t0)) < 1e-9)
        throw std::invalid_argument("eigen_check: t0 is a root of the Wronskian");
    ScalarDiffOp<Complex> chain = fundamental_diff_op(fo);
    const int order = k.order();
    if (int(chain.coeffs.size()) != order + 1)
        throw std::invalid_argument("eigen_check: operator orders differ");

    EigenCheckReport rep;
    Real vnorm = v.norm();
    for (int i = 1; i <= order; ++i) {
        Complex lambda = chain.coeffs[order - i].eval(t0);
        rep.eigenvalues.push_back(to_cdouble(lambda));
        Mat<Complex> ki = eval_matrix(ctx, coefficient(k, i), t0);
        std::vector<Complex> img = mat_vec(ki, v.coeffs);
        Real dev(0);
        for (long r = 0; r < ctx.dim; ++r) dev = std::max(dev, abs(img[r] - lambda * v.coeffs[r]));
        Real scale = abs(lambda) * vnorm + vnorm;
        rep.max_rel_dev = std::max(rep.max_rel_dev, (dev / scale).convert_to<double>());
    }
    return rep;
}

SymmetryReport shapovalov_symmetry_check(const GaudinContext& ctx, const MatRatOperator& k,
                                         const Complex& t0, int trials, std::uint64_t seed) {
    SymmetryReport rep;
    for (int i = 1; i <= k.order(); ++i) {
        Mat<Complex> ki = eval_matrix(ctx, coefficient(k, i), t0);
        double knorm = mat_max_mag(ki);
        double asym = 0;
        for (long r = 0; r < ctx.dim; ++r)
            for (long c = 0; c < ctx.dim; ++c)
                asym = std::max(asym, mag_d(Complex(ki[r][c] - ki[c][r])));
        rep.antisym_norm_ratio = std::max(rep.antisym_norm_ratio, knorm > 0 ? asym / knorm : 0.0);

        Rng rng(derive_seed(seed, i));
        for (int t = 0; t < trials; ++t) {
            std::vector<Complex> u(ctx.dim), w(ctx.dim);
            for (long r = 0; r < ctx.dim; ++r) {
                u[r] = Complex(rng.uniform(-1, 1));
                w[r] = Complex(rng.uniform(-1, 1));
            }
            Complex a = dot(mat_vec(ki, u), w);
            Complex b = dot(u, mat_vec(ki, w));
            double scale = std::max(mag_d(a), mag_d(b));
            if (scale > 0)
                rep.max_rel_dev = std::max(rep.max_rel_dev, mag_d(Complex(a - b)) / scale);
        }
    }
    return rep;
}

double commute_check(const GaudinContext& ctx, const MatRatOperator& m, const Complex& u,
                     const Complex& v) {
    double worst = 0;
    const int order = m.order();
    std::vector<Mat<Complex>> mu, mv;
    for (int i = 1; i <= order; ++i) {
        mu.push_back(eval_matrix(ctx, coefficient(m, i), u));
        mv.push_back(eval_matrix(ctx, coefficient(m, i), v));
    }
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < mv.size(); ++j) {
            Mat<Complex> ab = mat_mul(mu[i], mv[j]);
            Mat<Complex> ba = mat_mul(mv[j], mu[i]);
            double scale = std::max(1e-300, std::max(mat_max_mag(ab), mat_max_mag(ba)));
            worst = std::max(worst, mat_max_mag(mat_sub(std::move(ab), ba)) / scale);
        }
    return worst;
}

double sl_commute_check(const GaudinContext& ctx, const MatRatOperator& k, const Complex& t0) {
    double worst = 0;
    // total E_{i,i+1} and E_{i+1,i} as dense matrices
    std::vector<Mat<Complex>> gens;
    for (int i = 1; i <= ctx.n; ++i) {
        for (int dir = 0; dir < 2; ++dir) {
            Mat<Complex> g(ctx.dim, std::vector<Complex>(ctx.dim, Complex(0)));
            for (long c = 0; c < ctx.dim; ++c) {
                TensorVector e(ctx);
                e.coeffs[c] = Complex(1);
                TensorVector img = dir == 0 ? apply_E_total(ctx, i, i + 1, e)
                                            : apply_E_total(ctx, i + 1, i, e);
                for (long r = 0; r < ctx.dim; ++r) g[r][c] = img.coeffs[r];
            }
            gens.push_back(std::move(g));
        }
    }
    for (int i = 1; i <= k.order(); ++i) {
        Mat<Complex> ki = eval_matrix(ctx, coefficient(k, i), t0);
        for (const auto& g : gens) {
            Mat<Complex> ab = mat_mul(ki, g);
            Mat<Complex> ba = mat_mul(g, ki);
            double scale = std::max(1e-300, std::max(mat_max_mag(ab), mat_max_mag(ba)));
            worst = std::max(worst, mat_max_mag(mat_sub(std::move(ab), ba)) / scale);
        }
    }
    return worst;
}

}  // namespace wronskit
