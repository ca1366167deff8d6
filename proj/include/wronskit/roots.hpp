#pragma once

// Complex root finding: companion-matrix eigenvalues in double precision for
// starting points, Aberth-Ehrlich refinement at working precision, then
// multiplicity clustering.

#include "wronskit/polynomial.hpp"

#include <stdexcept>
#include <vector>

namespace wronskit {

struct RootMultiset {
    std::vector<std::pair<Complex, int>> roots;  // (value, multiplicity)
    Real residual{0};                            // max scaled backward error
    int total() const {
        int t = 0;
        for (const auto& r : roots) t += r.second;
        return t;
    }
};

struct precision_exhausted_error : std::runtime_error {
    double achieved_residual;
    explicit precision_exhausted_error(double res)
        : std::runtime_error("root finder failed to reach the requested precision"),
          achieved_residual(res) {}
};

// All roots of f with multiplicities. target_bits defaults to the runtime
// precision; the scaled residual must reach 2^-(target_bits-24).
RootMultiset find_roots(const Polynomial<Complex>& f, int target_bits = 0);
RootMultiset find_roots(const Polynomial<Rat>& f, int target_bits = 0);

// convenience: roots flattened with multiplicity
std::vector<Complex> root_list(const RootMultiset& rm);

}  // namespace wronskit
