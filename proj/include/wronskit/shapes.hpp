#pragma once

// Partitions, skew shapes, and standard-Young-tableau enumeration. Shared by
// the Grassmannian combinatorics and the slide machinery.

#include "wronskit/scalars.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace wronskit {

// weakly decreasing nonnegative parts, trailing zeros trimmed
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    Partition(std::initializer_list<int> p) : parts(p) { normalize(); }
    explicit Partition(std::vector<int> p) : parts(std::move(p)) { normalize(); }

    void normalize() {
        for (std::size_t i = 1; i < parts.size(); ++i)
            if (parts[i] > parts[i - 1]) throw std::invalid_argument("partition not weakly decreasing");
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
    }
    int rows() const { return int(parts.size()); }
    int row(int i) const { return i < rows() ? parts[i] : 0; }
    int size() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    bool contains(const Partition& mu) const {
        for (int i = 0; i < mu.rows(); ++i)
            if (row(i) < mu.row(i)) return false;
        return true;
    }
    bool fits_in_box(int max_rows, int max_cols) const {
        return rows() <= max_rows && (parts.empty() || parts[0] <= max_cols);
    }
    static Partition rectangle(int nrows, int ncols) {
        return Partition(std::vector<int>(nrows, ncols));
    }
    auto operator<=>(const Partition&) const = default;
};

struct SkewShape {
    Partition outer, inner;

    SkewShape() = default;
    SkewShape(Partition out, Partition in = {}) : outer(std::move(out)), inner(std::move(in)) {
        if (!outer.contains(inner)) throw std::invalid_argument("inner partition not contained in outer");
    }
    int rows() const { return outer.rows(); }
    int size() const { return outer.size() - inner.size(); }
    bool is_straight() const { return inner.parts.empty(); }
    bool contains_cell(int r, int c) const {
        return r >= 0 && r < rows() && c >= inner.row(r) && c < outer.row(r);
    }
    std::vector<std::pair<int, int>> cells() const {  // row-major
        std::vector<std::pair<int, int>> out;
        for (int r = 0; r < rows(); ++r)
            for (int c = inner.row(r); c < outer.row(r); ++c) out.emplace_back(r, c);
        return out;
    }
    bool operator==(const SkewShape& o) const { return outer == o.outer && inner == o.inner; }
};

// number of SYT: hook lengths for straight shapes, profile-memoized lattice
// enumeration for skew shapes
BigInt syt_count_big(const SkewShape& shape);
long syt_count(const SkewShape& shape);

// all standard fillings as row-major entry vectors (entry 0 for cells outside
// the shape never appears; vectors are indexed like shape.cells())
std::vector<std::vector<int>> enumerate_standard_fillings(const SkewShape& shape, int cap = 20);

inline int permutation_sign(std::vector<int> p) {  // p is 0-based
    int sign = 1;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

}  // namespace wronskit
