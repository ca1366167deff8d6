#pragma once

// Master function of the Bethe ansatz, its critical points, the fundamental
// differential operator of a critical point, and the dictionary between
// critical points and spaces of polynomials.

#include "wronskit/ratfn.hpp"
#include "wronskit/roots.hpp"
#include "wronskit/wronski.hpp"

#include <vector>

namespace wronskit {

struct MasterParams {
    int n = 0, d = 0;
    std::vector<Complex> s;  // (n+1)(d-n) pairwise distinct values

    MasterParams(int n_, int d_, std::vector<Complex> s_);
    int level_size(int i) const { return i * (d - n); }  // i = 1..n
    int var_count() const { return (n * (n + 1) / 2) * (d - n); }
};

// level i-1 holds i*(d-n) values; canonical form sorts each level by
// (real, imag), one representative per orbit of the level-permutation group
struct CriticalPoint {
    std::vector<std::vector<Complex>> levels;

    void canonicalize();
    std::vector<Complex> flat() const;
    static CriticalPoint from_flat(const std::vector<Complex>& x, const MasterParams& mp);
};

double critical_distance(const CriticalPoint& a, const CriticalPoint& b);

struct singular_configuration_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct near_degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct incomplete_solve_error : std::runtime_error {
    long found, expected;
    incomplete_solve_error(long f, long e)
        : std::runtime_error("critical point search found " + std::to_string(f) + " of " +
                             std::to_string(e) + " orbits"),
          found(f), expected(e) {}
};
struct not_critical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct hypotheses_not_met_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// value of the master function, by the direct product formula
Complex master_value_direct(const CriticalPoint& x, const MasterParams& s);
// the same through discriminants and resultants of the p_i
Complex master_value_resultant(const CriticalPoint& x, const MasterParams& s);
// both routes, checked against each other to 1e-20 relative
Complex master_value(const CriticalPoint& x, const MasterParams& s);

// gradient of log(master function), one entry per variable (closed form)
std::vector<Complex> bethe_residual(const CriticalPoint& x, const MasterParams& s);
// analytic Hessian of log(master function)
Mat<Complex> bethe_hessian(const CriticalPoint& x, const MasterParams& s);

struct SolveCriticalOptions {
    std::uint64_t seed = 777;
    int starts_per_orbit = 200;
    bool cross_validate = true;  // run the direct Newton route and compare orbit sets
    unsigned workers = 0;
};

// One canonical representative per orbit. Primary route: the inverse Wronski
// fiber pulled back through the fundamental-space dictionary; secondary
// route: Newton iteration on the critical-point equations from random starts.
std::vector<CriticalPoint> solve_critical(const MasterParams& s,
                                          const SolveCriticalOptions& opt = {});

// the direct Newton route alone (used for cross-validation and tests)
std::vector<CriticalPoint> solve_critical_newton(const MasterParams& s,
                                                 const SolveCriticalOptions& opt = {});

template <class T>
struct FundamentalOp {
    std::vector<Polynomial<T>> p;  // p[i-1] = p_i, monic of degree i(d-n)
    Polynomial<T> w;               // monic, degree (n+1)(d-n)
};
using FundamentalOperator = FundamentalOp<Complex>;

FundamentalOperator fundamental_operator(const CriticalPoint& x, const MasterParams& s);

// the factored first-order chain of the fundamental differential operator
template <class T>
ScalarDiffOp<T> fundamental_diff_op(const FundamentalOp<T>& fo) {
    const int n = int(fo.p.size());
    ScalarDiffOp<T> op =
        ScalarDiffOp<T>::first_order(log_derivative_ratio(fo.p[0], Polynomial<T>::one()));
    for (int m = 2; m <= n; ++m)
        op = ScalarDiffOp<T>::first_order(log_derivative_ratio(fo.p[m - 1], fo.p[m - 2])).compose(op);
    op = ScalarDiffOp<T>::first_order(log_derivative_ratio(fo.w, fo.p[n - 1])).compose(op);
    return op;
}

// polynomial kernel of the fundamental operator, as a point of G(n,d)
template <class T>
PolySpace<T> kernel_polynomials(const FundamentalOp<T>& fo);

PolySpace<Complex> kernel_polynomials(const FundamentalOperator& fo);

// monic p_1..p_n from a space: f_0, Wr(f_0,f_1), ..., Wr(f_0..f_{n-1});
// requires square-free basis polynomials with coprime consecutive pairs
std::vector<Polynomial<Complex>> recover_critical(const PolySpace<Complex>& p);

struct FactorizationReport {
    bool annihilates_basis = false;
    bool rejects_nonmember = false;
    bool factors_match = false;
    double max_deviation = 0;
    bool ok() const { return annihilates_basis && rejects_nonmember && factors_match; }
};

// checks that the (n+2)-column determinant operator of the basis annihilates
// exactly the span and equals Wr(basis) times the factored chain
template <class T>
FactorizationReport factorization_identity_check(const PolySpace<T>& space,
                                                 std::uint64_t seed = 2024);

nlohmann::json critical_point_to_json(const CriticalPoint& x);

}  // namespace wronskit
