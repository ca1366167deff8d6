#pragma once

// The Gaudin model on tensor powers of the last fundamental representation of
// sl_{n+1} at small rank: the operators M and K as differential operators
// with matrix rational coefficients, the universal weight function, and the
// spectral checks against the fundamental operator of a critical point.

#include "wronskit/bethe.hpp"
#include "wronskit/linalg.hpp"

#include <map>
#include <vector>

namespace wronskit {

// Basis v_1..v_{n+1} of V_{omega_n} with v_{n+1} highest. The gl-action used
// throughout (fixed by the eigenvalue identity of the Gaudin Hamiltonians):
//   E_{ij} v_a = delta_{ia} (-1)^{i+j+1} v_j   (i != j)
//   E_{ii} v_a = -delta_{ia} v_a
struct GaudinContext {
    int n = 0;                // rank parameter, V = C^{n+1}-flavored
    int m = 0;                // tensor factors
    std::vector<Complex> s;   // m distinct marked points
    long dim = 0;             // (n+1)^m

    GaudinContext(int n_, std::vector<Complex> s_);

    // tensor basis index from digits b_k in 1..n+1 (factor k = digit k)
    long index(const std::vector<int>& digits) const;
    std::vector<int> digits(long index) const;
};

struct TensorVector {
    const GaudinContext* ctx = nullptr;
    std::vector<Complex> coeffs;

    TensorVector() = default;
    explicit TensorVector(const GaudinContext& c) : ctx(&c), coeffs(c.dim, Complex(0)) {}

    Real norm() const { return vec_norm(coeffs); }
};

// single E_{ij} acting on tensor factor k (0-based)
TensorVector apply_E(const GaudinContext& ctx, int i, int j, int k, const TensorVector& v);
// sum over factors of E_{ij}^{(k)} (the total sl-action)
TensorVector apply_E_total(const GaudinContext& ctx, int i, int j, const TensorVector& v);

// rational function with denominator prod_k (t - s_k)^{e_k}
struct RatFac {
    Polynomial<Complex> num;
    std::vector<int> den_exp;

    RatFac() = default;
    RatFac(Polynomial<Complex> n, std::vector<int> e) : num(std::move(n)), den_exp(std::move(e)) {}

    bool is_zero() const { return num.is_zero(); }
};

RatFac ratfac_add(const GaudinContext& ctx, const RatFac& a, const RatFac& b);
RatFac ratfac_mul(const RatFac& a, const RatFac& b);
RatFac ratfac_derivative(const GaudinContext& ctx, const RatFac& f);
Complex ratfac_eval(const GaudinContext& ctx, const RatFac& f, const Complex& t0);

// sparse matrix of rational functions
using SparseMatRat = std::map<std::pair<long, long>, RatFac>;

// sum_j C_j(t) (d/dt)^j acting on tensor-valued functions
struct MatRatOperator {
    const GaudinContext* ctx = nullptr;
    std::vector<SparseMatRat> coeffs;  // index = derivative order

    int order() const { return int(coeffs.size()) - 1; }
};

MatRatOperator compose(const MatRatOperator& a, const MatRatOperator& b);
Mat<Complex> eval_matrix(const GaudinContext& ctx, const SparseMatRat& m, const Complex& t0);

// the determinant operator M = sum_sigma sgn(sigma) X_{1,sigma(1)}...X_{n+1,sigma(n+1)}
MatRatOperator build_M(const GaudinContext& ctx);
// standard-form coefficient M_i(t) of (d/dt)^{n+1-i}, i = 1..n+1
const SparseMatRat& coefficient(const MatRatOperator& op, int i);

// K, the operator formally conjugate to (-1)^{n+1} M, in standard form
MatRatOperator conjugate_K(const MatRatOperator& m);

// universal weight function evaluated at a critical point; requires
// s to be the master parameters and x its critical point (n matching)
TensorVector universal_weight_vector(const GaudinContext& ctx, const CriticalPoint& x);

bool is_singular(const GaudinContext& ctx, const TensorVector& v, double rel_tol = 1e-25);

// dimension of the singular vectors of the given content (counts[a] = number
// of tensor factors carrying basis vector a+1); weight zero = all equal
long sing_dimension(int n, int m, const std::vector<int>& counts);
long sing_dimension_zero(int n, int m);

// orthonormal spanning set of sing(V[0]) as coefficient vectors
std::vector<std::vector<Complex>> singular_weight_zero_basis(const GaudinContext& ctx);

struct EigenCheckReport {
    double max_rel_dev = 0;
    std::vector<CDouble> eigenvalues;  // lambda_i(t0)
    bool ok(double tol = 1e-20) const { return max_rel_dev < tol; }
};

// verifies K_i(t0) v = lambda_i(t0) v with the lambda_i read off from the
// factored fundamental operator of the critical point
EigenCheckReport eigen_check(const GaudinContext& ctx, const MatRatOperator& k,
                             const TensorVector& v, const FundamentalOperator& fo,
                             const Complex& t0);

struct SymmetryReport {
    double max_rel_dev = 0;        // pairing asymmetry over the random trials
    double antisym_norm_ratio = 0; // ||K - K^T|| / ||K|| at t0
    bool ok(double tol = 1e-20) const { return max_rel_dev < tol && antisym_norm_ratio < tol; }
};

// Shapovalov (Euclidean) symmetry of the K_i at a real point
SymmetryReport shapovalov_symmetry_check(const GaudinContext& ctx, const MatRatOperator& k,
                                         const Complex& t0, int trials, std::uint64_t seed = 99);

// commutators [M_i(u), M_j(v)] over all i, j, as a relative deviation
double commute_check(const GaudinContext& ctx, const MatRatOperator& m, const Complex& u,
                     const Complex& v);

// commutators of the K_i(t0) with the total raising/lowering operators
double sl_commute_check(const GaudinContext& ctx, const MatRatOperator& k, const Complex& t0);

}  // namespace wronskit
