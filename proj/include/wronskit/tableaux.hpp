#pragma once

// Standard Young tableaux with integer and signed-real entries, the
// slide-along-path algorithm, tableau switching, and the two slide-defined
// equivalence relations.

#include "wronskit/shapes.hpp"

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wronskit {

struct Tableau {
    SkewShape shape;
    std::vector<int> entries;  // row-major over shape.cells(), values 1..size

    Tableau() = default;
    Tableau(SkewShape sh, std::vector<int> e);

    int entry_at(int r, int c) const;  // 0 if the cell is outside the shape
    std::pair<int, int> cell_of(int value) const;
    bool operator==(const Tableau& o) const { return shape == o.shape && entries == o.entries; }
    bool operator<(const Tableau& o) const { return entries < o.entries; }
    std::string str() const;
};

bool is_standard(const SkewShape& shape, const std::vector<int>& entries);

std::vector<Tableau> enumerate_syt(const SkewShape& shape, int cap = 20);

// entry of a signed tableau: a real number or the point at infinity
struct SignedEntry {
    double value = 0;
    bool inf = false;

    double abs_value() const { return inf ? std::numeric_limits<double>::infinity() : std::abs(value); }
    static SignedEntry finite(double v) { return {v, false}; }
    bool operator==(const SignedEntry&) const = default;
};

struct SignedTableau {
    SkewShape shape;
    std::vector<SignedEntry> cells;                // row-major over shape.cells()
    std::optional<std::pair<int, int>> ambient;    // (rows, cols) rectangle, for the infinity clause

    SignedTableau() = default;
    SignedTableau(SkewShape sh, std::vector<SignedEntry> vals,
                  std::optional<std::pair<int, int>> amb = std::nullopt);

    bool operator==(const SignedTableau& o) const { return shape == o.shape && cells == o.cells; }
};

// entry with k-th smallest absolute value becomes k
Tableau ord(const SignedTableau& t);

struct invalid_path_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A discrete slide path: entry values at the start, one assignment per
// crossing event, and the final assignment. Each segment between consecutive
// assignments is the straight-line motion; an event's segment must contain
// exactly the named crossing s_i = -s_j and no other, the final segment none.
struct SlidePath {
    struct Event {
        int i = 0, j = 0;
        std::vector<double> after;
    };
    std::vector<double> start;
    std::vector<Event> events;
    std::vector<double> end;

    SlidePath reversed() const;
    SlidePath then(const SlidePath& next) const;  // requires end == next.start
};

// straight-line motion with crossing events discovered automatically; throws
// on simultaneous crossings or entry collisions
SlidePath make_path(std::vector<double> start, std::vector<double> end);

// Open path realizing exactly one crossing, between the entries of magnitude
// rank k and k+1 (0-based): the k-th entry starts at the negative of its value
// and dives past -s_{k+1}. Its ord-action on SYT is the adjacent-label
// exchange rule that the monodromy tests compare against.
SlidePath adjacent_crossing_path(const std::vector<double>& sorted_positive, int k);

SignedTableau slide_path(const SignedTableau& t, const SlidePath& path);

// states right after each event, then the final state (always nonempty)
std::vector<SignedTableau> slide_path_trace(const SignedTableau& t, const SlidePath& path);

// tableau switching: `inner` of shape mu/nu inside `outer` of shape lambda/mu
struct SwitchResult {
    Tableau slid_outer;  // slide_T U, on kappa/nu with kappa a straight extension of nu
    Tableau slid_inner;  // slide_U T, on lambda/kappa
};
SwitchResult switch_tableaux(const Tableau& inner, const Tableau& outer);

// definition-based equivalences, brute-forced over all witness tableaux
// (outer witnesses for dual equivalence range over a 2-padded box)
bool knuth_equivalent(const Tableau& u1, const Tableau& u2, int cap = 8);
bool dual_equivalent(const Tableau& u1, const Tableau& u2, int cap = 8);

// c_d = (1/d) C(2d-2, d-1), the net count
long catalan_nets(int d);

// sign of the cell-matching permutation from anchor t0 to t
int sigma_sign(const Tableau& t, const Tableau& t0);

}  // namespace wronskit
