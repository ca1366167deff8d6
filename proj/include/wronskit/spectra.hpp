#pragma once

// The structured matrix Z built from exponents and diagonal entries, the
// Wronskian-eigenvalue identities behind it, Vandermonde/Lagrange bookkeeping,
// and Calogero-Moser pairs.

#include "wronskit/linalg.hpp"
#include "wronskit/polynomial.hpp"
#include "wronskit/roots.hpp"
#include "wronskit/util.hpp"

#include <vector>

namespace wronskit {

// eigenvalues of a small dense complex matrix (characteristic polynomial
// plus the multiprecision root finder)
std::vector<Complex> dense_eigenvalues(const Mat<Complex>& a);

// Z with off-diagonal entries 1/(b_i - b_j)
struct ZMatrix {
    std::vector<Complex> b;      // pairwise distinct, real for the reality theorem
    std::vector<Complex> alpha;  // diagonal

    ZMatrix(std::vector<Complex> b_, std::vector<Complex> alpha_);
    Mat<Complex> matrix() const;
    bool b_is_real(double tol = 1e-12) const;
};

ZMatrix build_Z(const std::vector<Complex>& b, const std::vector<Complex>& alpha);
bool eigen_real_test(const ZMatrix& z, double tol = 1e-20);

// diag(a), Vandermonde (b_j^i), its derivative companion (i b_j^{i-1}),
// Lagrange coefficients and the closed-form entries of V^{-1} W
struct VandermondeKit {
    std::vector<Complex> b;
    Mat<Complex> vandermonde;     // V
    Mat<Complex> derivative_mat;  // W = (i b_j^{i-1})
    Mat<Complex> lagrange;        // rows: coefficients of l_i(u); equals V^{-1}
    Mat<Complex> vinv_w;          // closed-form entries m_{ij}

    explicit VandermondeKit(std::vector<Complex> b_);
};

struct WrIdentityReport {
    Polynomial<Complex> lhs_poly;  // polynomial part of the symbolic Wronskian
    Polynomial<Complex> rhs_poly;  // prod(b_j - b_i) * det(It - (A - V^{-1}W))
    double max_rel_dev = 0;
};

// Wr((t-a_0)e^{b_0 t}, ..., (t-a_n)e^{b_n t}), two ways
WrIdentityReport wr_identity_check(const std::vector<Complex>& a, const std::vector<Complex>& b);

struct RelationReport {
    std::vector<Complex> z_eigenvalues;
    std::vector<Complex> wronskian_roots;
    double max_match_dev = 0;  // multiset matching deviation
    bool matched = false;
};

// alpha_i := a_i - m_{ii}; eigenvalues of Z against the Wronskian roots
RelationReport relation_roundtrip(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                  double tol = 1e-15);

struct ContrapositiveReport {
    long trials = 0;
    long violations = 0;  // non-real alpha with a real-only spectrum
};

// sample non-real alpha; the spectrum must then be non-real
ContrapositiveReport theorem2_contrapositive_sample(int size, long trials,
                                                    std::uint64_t seed = 4242);

struct CMPair {
    Mat<Complex> x, z;
};

// rank([X,Z] - I) == 1 within the SVD gap tolerance
bool cm_invariant_holds(const CMPair& pair, double rel_tol = 1e-10);

struct not_generic_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CMNormalForm {
    CMPair pair;                  // X diagonal, K all-ones
    std::vector<Complex> b;       // diagonal of X, canonically ordered
    std::vector<Complex> alpha;   // diagonal of Z
};

// conjugate so X = diag(b) and the rank-one commutator defect is all-ones;
// off-diagonal z entries then verify (b_i - b_j)^{-1}
CMNormalForm cm_normalize(const CMPair& pair);

// (spectrum of X, spectrum of Z), canonically sorted
std::pair<std::vector<Complex>, std::vector<Complex>> upsilon(const CMPair& pair);

}  // namespace wronskit
