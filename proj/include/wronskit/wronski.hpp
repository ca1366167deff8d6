#pragma once

// The inverse Wronski map: all spaces of polynomials with a prescribed
// Wronskian, reality certification, and numerical continuation of fibers
// along paths of root configurations.

#include "wronskit/grassmann.hpp"
#include "wronskit/util.hpp"

#include <cstdint>
#include <vector>

namespace wronskit {

struct WronskiFiber {
    int n = 0, d = 0;
    Polynomial<Complex> target;               // monic, degree (n+1)(d-n)
    std::vector<PolySpace<Complex>> solutions;
    std::vector<double> residuals;            // per solution, scaled
    long expected = 0;                        // degree_iota(n,d)
    bool complete = false;                    // solutions.size() == expected
};

struct InverseOptions {
    std::uint64_t seed = 12345;
    int starts_per_orbit = 200;      // random multistart budget
    int newton_iterations = 60;
    bool warm_continuation = true;   // top up from a well-spaced fiber when short
    unsigned workers = 0;            // 0 = hardware default
};

struct unsupported_input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Find the fiber of the Wronski map over W. W must have degree (n+1)(d-n)
// and distinct roots; repeated roots are rejected (the fiber may be
// nonreduced there).
WronskiFiber inverse_wronski(const Polynomial<Complex>& w, int n, int d,
                             const InverseOptions& opt = {});
WronskiFiber inverse_wronski_from_roots(const std::vector<Complex>& roots, int n, int d,
                                        const InverseOptions& opt = {});

// true iff every canonical-basis coefficient has |imag| < tol
bool is_real_space(const PolySpace<Complex>& p, double tol = 1e-20);

// labeled root tracks; straight-line interpolation between waypoints
struct RootPath {
    std::vector<std::vector<Complex>> waypoints;

    static RootPath line(std::vector<Complex> from, std::vector<Complex> to);
    // loop in which roots k and k+1 trade places along a half-turn arc
    // (counterclockwise), all other roots fixed; start = end as a set
    static RootPath exchange_loop(const std::vector<Complex>& roots, int k, int arc_samples = 24);
    RootPath then(const RootPath& next) const;
};

struct path_through_discriminant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContinuationResult {
    WronskiFiber end_fiber;
    // for loops: permutation[i] = index in the start fiber of the solution
    // that solution i of the end fiber continues from
    std::vector<int> permutation;
    bool is_loop = false;
};

ContinuationResult continue_fiber(const WronskiFiber& fiber, const RootPath& path,
                                  const InverseOptions& opt = {});

struct ClusteredReport {
    std::vector<Complex> roots;
    long expected = 0;
    int found = 0;
    int real_count = 0;
    bool complete = false;
    double min_jacobian_sv = 0;  // minimum scaled Jacobian singular value over solutions
};

// fiber over the clustered configuration s_k = ratio^k
ClusteredReport clustered_reality_probe(int n, int d, double ratio, const InverseOptions& opt = {});

// minimum singular value of the scaled Wronski Jacobian at a solution
double jacobian_min_sv(const PolySpace<Complex>& p);

nlohmann::json fiber_to_json(const WronskiFiber& fiber);

}  // namespace wronskit
