#include "wronskit/tableaux.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace wronskit {

namespace {

int cell_index(const SkewShape& shape, int r, int c) {
    int idx = 0;
    for (int rr = 0; rr < shape.rows(); ++rr) {
        if (rr == r) {
            if (c < shape.inner.row(rr) || c >= shape.outer.row(rr)) return -1;
            return idx + (c - shape.inner.row(rr));
        }
        idx += shape.outer.row(rr) - shape.inner.row(rr);
    }
    return -1;
}

struct Crossing {
    double tau;
    int i, j;
};

// crossing times of s_i = -s_j on the open straight segment u -> v;
// throws on collisions s_i = s_j
std::vector<Crossing> segment_crossings(const std::vector<double>& u, const std::vector<double>& v) {
    const int n = int(u.size());
    std::vector<Crossing> cross;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double a = u[i] + u[j];
            double b = (v[i] - u[i]) + (v[j] - u[j]);
            if (b != 0) {
                double tau = -a / b;
                if (tau > 0 && tau < 1) cross.push_back({tau, i, j});
            } else if (a == 0) {
                throw invalid_path_error("slide path: a pair stays on the crossing locus");
            }
            double ac = u[i] - u[j];
            double bc = (v[i] - u[i]) - (v[j] - u[j]);
            if (bc != 0) {
                double tau = -ac / bc;
                if (tau >= 0 && tau <= 1) throw invalid_path_error("slide path: entries collide");
            } else if (ac == 0) {
                throw invalid_path_error("slide path: entries coincide");
            }
        }
    std::sort(cross.begin(), cross.end(), [](const Crossing& a, const Crossing& b) { return a.tau < b.tau; });
    for (std::size_t k = 1; k < cross.size(); ++k)
        if (cross[k].tau == cross[k - 1].tau)
            throw invalid_path_error("slide path: simultaneous crossings");
    return cross;
}

}  // namespace

bool is_standard(const SkewShape& shape, const std::vector<int>& entries) {
    if (int(entries.size()) != shape.size()) return false;
    std::vector<bool> used(entries.size() + 1, false);
    for (int e : entries) {
        if (e < 1 || e > int(entries.size()) || used[e]) return false;
        used[e] = true;
    }
    for (int r = 0; r < shape.rows(); ++r)
        for (int c = shape.inner.row(r); c < shape.outer.row(r); ++c) {
            int here = entries[cell_index(shape, r, c)];
            if (shape.contains_cell(r, c + 1) && entries[cell_index(shape, r, c + 1)] < here) return false;
            if (shape.contains_cell(r + 1, c) && entries[cell_index(shape, r + 1, c)] < here) return false;
        }
    return true;
}

Tableau::Tableau(SkewShape sh, std::vector<int> e) : shape(std::move(sh)), entries(std::move(e)) {
    if (!is_standard(shape, entries)) throw std::invalid_argument("not a standard tableau");
}

int Tableau::entry_at(int r, int c) const {
    int idx = cell_index(shape, r, c);
    return idx < 0 ? 0 : entries[idx];
}

std::pair<int, int> Tableau::cell_of(int value) const {
    auto cells = shape.cells();
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (entries[i] == value) return cells[i];
    throw std::invalid_argument("value not present in tableau");
}

std::string Tableau::str() const {
    std::ostringstream os;
    for (int r = 0; r < shape.rows(); ++r) {
        if (r) os << "/";
        bool firstcell = true;
        for (int c = 0; c < shape.inner.row(r); ++c) {
            if (!firstcell) os << ",";
            os << ".";
            firstcell = false;
        }
        for (int c = shape.inner.row(r); c < shape.outer.row(r); ++c) {
            if (!firstcell) os << ",";
            os << entry_at(r, c);
            firstcell = false;
        }
    }
    return os.str();
}

std::vector<Tableau> enumerate_syt(const SkewShape& shape, int cap) {
    std::vector<Tableau> out;
    for (auto& e : enumerate_standard_fillings(shape, cap)) out.emplace_back(shape, std::move(e));
    return out;
}

SignedTableau::SignedTableau(SkewShape sh, std::vector<SignedEntry> vals,
                             std::optional<std::pair<int, int>> amb)
    : shape(std::move(sh)), cells(std::move(vals)), ambient(amb) {
    if (int(cells.size()) != shape.size())
        throw std::invalid_argument("signed tableau: wrong number of entries");
    std::vector<double> mags;
    for (const auto& e : cells) mags.push_back(e.abs_value());
    std::sort(mags.begin(), mags.end());
    for (std::size_t i = 1; i < mags.size(); ++i)
        if (mags[i] == mags[i - 1]) throw std::invalid_argument("signed tableau: repeated absolute value");
    for (const auto& e : cells) {
        if (!e.inf && e.value == 0 && !shape.is_straight())
            throw std::invalid_argument("signed tableau: 0 requires an empty inner shape");
        if (e.inf && (!ambient || shape.outer != Partition::rectangle(ambient->first, ambient->second)))
            throw std::invalid_argument(
                "signed tableau: infinity requires the outer shape to be the full rectangle");
    }
    if (!is_standard(shape, ord(*this).entries))
        throw std::invalid_argument("signed tableau: absolute values do not increase");
}

Tableau ord(const SignedTableau& t) {
    std::vector<int> idx(t.cells.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return t.cells[a].abs_value() < t.cells[b].abs_value(); });
    std::vector<int> entries(t.cells.size());
    for (std::size_t k = 0; k < idx.size(); ++k) entries[idx[k]] = int(k) + 1;
    return Tableau(t.shape, std::move(entries));
}

SlidePath SlidePath::reversed() const {
    SlidePath rev;
    rev.start = end;
    rev.end = start;
    for (std::size_t e = events.size(); e-- > 0;) {
        Event ev;
        ev.i = events[e].i;
        ev.j = events[e].j;
        ev.after = e == 0 ? start : events[e - 1].after;
        rev.events.push_back(std::move(ev));
    }
    return rev;
}

SlidePath SlidePath::then(const SlidePath& next) const {
    if (end != next.start) throw invalid_path_error("path concatenation: endpoint mismatch");
    SlidePath out = *this;
    for (const auto& e : next.events) out.events.push_back(e);
    out.end = next.end;
    return out;
}

SlidePath make_path(std::vector<double> start, std::vector<double> end) {
    auto cross = segment_crossings(start, end);
    const int n = int(start.size());
    SlidePath p;
    p.start = start;
    for (std::size_t k = 0; k < cross.size(); ++k) {
        double tau_next = k + 1 < cross.size() ? (cross[k].tau + cross[k + 1].tau) / 2
                                               : (cross[k].tau + 1.0) / 2;
        SlidePath::Event ev;
        ev.i = cross[k].i;
        ev.j = cross[k].j;
        ev.after.resize(n);
        for (int t = 0; t < n; ++t) ev.after[t] = start[t] + tau_next * (end[t] - start[t]);
        p.events.push_back(std::move(ev));
    }
    p.end = std::move(end);
    return p;
}

SlidePath adjacent_crossing_path(const std::vector<double>& s, int k) {
    const int n = int(s.size());
    if (k < 0 || k + 1 >= n) throw std::invalid_argument("adjacent_crossing_path: bad index");
    for (int i = 0; i < n; ++i) {
        if (s[i] <= 0) throw std::invalid_argument("adjacent_crossing_path: values must be positive");
        if (i && s[i] <= s[i - 1])
            throw std::invalid_argument("adjacent_crossing_path: values must be sorted");
    }
    // entry k starts on the negative side and dives past -s_{k+1}; the single
    // crossing is with entry k+1, and their magnitude ranks interchange
    std::vector<double> start = s, end = s;
    start[k] = -s[k];
    end[k] = k + 2 < n ? -(s[k + 1] + s[k + 2]) / 2 : -(s[k + 1] + 1.0);
    return make_path(std::move(start), std::move(end));
}

std::vector<SignedTableau> slide_path_trace(const SignedTableau& t, const SlidePath& path) {
    const int n = int(t.cells.size());
    if (int(path.start.size()) != n) throw invalid_path_error("slide_path: entry count mismatch");
    auto cells = t.shape.cells();
    std::vector<int> cell_of_entry(n, -1);
    std::vector<bool> taken(n, false);
    for (int i = 0; i < n; ++i) {
        int found = -1;
        for (int cpos = 0; cpos < n; ++cpos) {
            if (taken[cpos] || t.cells[cpos].inf) continue;
            if (t.cells[cpos].value == path.start[i]) { found = cpos; break; }
        }
        if (found < 0) throw invalid_path_error("slide_path: tableau entries do not match path start");
        taken[found] = true;
        cell_of_entry[i] = found;
    }

    std::vector<double> values = path.start;
    auto snapshot = [&]() {
        std::vector<SignedEntry> vals(n);
        for (int i = 0; i < n; ++i) vals[cell_of_entry[i]] = SignedEntry::finite(values[i]);
        return SignedTableau(t.shape, std::move(vals), t.ambient);
    };
    // magnitude ranks of an assignment; the only quantity a crossing may move
    auto ranks = [n](const std::vector<double>& v) {
        std::vector<int> idx(n), rk(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return std::abs(v[a]) < std::abs(v[b]); });
        for (int r = 0; r < n; ++r) rk[idx[r]] = r;
        return rk;
    };

    std::vector<SignedTableau> trace;
    std::vector<int> rk = ranks(values);
    for (const auto& ev : path.events) {
        std::vector<int> rk_after = ranks(ev.after);
        if (std::abs(rk[ev.i] - rk[ev.j]) != 1 || rk_after[ev.i] != rk[ev.j] ||
            rk_after[ev.j] != rk[ev.i])
            throw invalid_path_error("slide path: event pair is not an adjacent magnitude exchange");
        for (int x = 0; x < n; ++x)
            if (x != ev.i && x != ev.j && rk_after[x] != rk[x])
                throw invalid_path_error("slide path: a second pair changed order at one event");
        int pi = cell_of_entry[ev.i], pj = cell_of_entry[ev.j];
        auto [ri, ci] = cells[pi];
        auto [rj, cj] = cells[pj];
        if (ri == rj || ci == cj) {
            bool adjacent = (ri == rj && std::abs(ci - cj) == 1) || (ci == cj && std::abs(ri - rj) == 1);
            if (!adjacent)
                throw invalid_path_error("slide path: same-line crossing of non-adjacent cells");
            std::swap(cell_of_entry[ev.i], cell_of_entry[ev.j]);
        }
        values = ev.after;
        rk = std::move(rk_after);
        trace.push_back(snapshot());  // the constructor re-validates the tableau
    }
    if (ranks(path.end) != rk)
        throw invalid_path_error("slide path: magnitude order changes after the last event");
    values = path.end;
    trace.push_back(snapshot());
    return trace;
}

SignedTableau slide_path(const SignedTableau& t, const SlidePath& path) {
    return slide_path_trace(t, path).back();
}

namespace {

// inner entries become +1..p, outer entries -(p+1)..-(p+q)
SignedTableau combine(const Tableau& inner, const Tableau& outer) {
    if (!(outer.shape.inner == inner.shape.outer))
        throw std::invalid_argument("switch: inner tableau must fill the outer tableau's inner shape");
    SkewShape total(outer.shape.outer, inner.shape.inner);
    const int p = inner.shape.size();
    std::vector<SignedEntry> vals(total.size());
    auto cells = total.cells();
    for (std::size_t k = 0; k < cells.size(); ++k) {
        auto [r, c] = cells[k];
        if (inner.shape.contains_cell(r, c)) vals[k] = SignedEntry::finite(double(inner.entry_at(r, c)));
        else vals[k] = SignedEntry::finite(-double(p + outer.entry_at(r, c)));
    }
    return SignedTableau(total, std::move(vals));
}

// sub-tableau of the negative (or positive) entries; empty rows fall back to
// the given base partition so the result is a valid skew shape
Tableau extract(const SignedTableau& s, bool negatives, const Partition& base) {
    auto cells = s.shape.cells();
    std::vector<int> row_min(s.shape.rows(), std::numeric_limits<int>::max());
    std::vector<int> row_max(s.shape.rows(), -1);
    std::vector<std::pair<double, std::pair<int, int>>> chosen;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if ((s.cells[k].value < 0) != negatives) continue;
        chosen.push_back({s.cells[k].abs_value(), cells[k]});
        row_min[cells[k].first] = std::min(row_min[cells[k].first], cells[k].second);
        row_max[cells[k].first] = std::max(row_max[cells[k].first], cells[k].second);
    }
    std::vector<int> outer_rows(s.shape.rows()), inner_rows(s.shape.rows());
    for (int r = 0; r < s.shape.rows(); ++r) {
        if (row_max[r] < 0) {
            outer_rows[r] = inner_rows[r] = base.row(r);
        } else {
            inner_rows[r] = row_min[r];
            outer_rows[r] = row_max[r] + 1;
        }
    }
    while (!outer_rows.empty() && outer_rows.back() == 0) {
        outer_rows.pop_back();
        inner_rows.pop_back();
    }
    SkewShape sub(Partition(std::move(outer_rows)), Partition(std::move(inner_rows)));
    std::sort(chosen.begin(), chosen.end());
    std::vector<int> entries(sub.size());
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        int idx = cell_index(sub, chosen[k].second.first, chosen[k].second.second);
        if (idx < 0) throw std::logic_error("switch: extracted cells do not form a skew shape");
        entries[idx] = int(k) + 1;
    }
    return Tableau(sub, std::move(entries));
}

}  // namespace

SwitchResult switch_tableaux(const Tableau& inner, const Tableau& outer) {
    const int p = inner.shape.size(), q = outer.shape.size();
    if (p == 0) return {outer, inner};
    if (q == 0) {
        // nothing to move through
        return {outer, inner};
    }
    SignedTableau s = combine(inner, outer);
    std::vector<double> assignment;
    for (int v = 1; v <= p; ++v) assignment.push_back(double(v));
    for (int v = 1; v <= q; ++v) assignment.push_back(-double(p + v));
    SlidePath acc;
    acc.start = assignment;
    acc.end = assignment;
    for (int v = p; v >= 1; --v) {
        std::vector<double> next = assignment;
        next[v - 1] = double(p + q + v);
        acc = acc.then(make_path(assignment, next));
        assignment = std::move(next);
    }
    SignedTableau done = slide_path(s, acc);
    Tableau slid_outer = extract(done, /*negatives=*/true, inner.shape.inner);
    Tableau slid_inner = extract(done, /*negatives=*/false, slid_outer.shape.outer);
    return {std::move(slid_outer), std::move(slid_inner)};
}

bool knuth_equivalent(const Tableau& u1, const Tableau& u2, int cap) {
    if (!(u1.shape == u2.shape)) throw std::invalid_argument("knuth_equivalent: shape mismatch");
    if (u1.shape.size() > cap) throw std::invalid_argument("knuth_equivalent: size cap exceeded");
    const Partition& mu = u1.shape.inner;
    if (mu.size() == 0) return u1 == u2;
    auto ts = enumerate_syt(SkewShape(mu), cap + mu.size());
    std::optional<Tableau> ref;
    for (const Tableau& t : ts) {
        Tableau r1 = switch_tableaux(t, u1).slid_outer;
        Tableau r2 = switch_tableaux(t, u2).slid_outer;
        if (!ref) ref = r1;
        if (!(r1 == *ref) || !(r2 == *ref)) return false;
    }
    return true;
}

bool dual_equivalent(const Tableau& u1, const Tableau& u2, int cap) {
    if (!(u1.shape == u2.shape)) throw std::invalid_argument("dual_equivalent: shape mismatch");
    if (u1.shape.size() > cap) throw std::invalid_argument("dual_equivalent: size cap exceeded");
    const Partition mu = u1.shape.inner;
    const Partition lam = u1.shape.outer;

    auto subpartitions = [](const Partition& bound, int max_rows, int max_cols) {
        std::vector<Partition> out;
        std::vector<int> v(max_rows, 0);
        std::function<void(int)> rec = [&](int r) {
            if (r == max_rows) {
                out.push_back(Partition(std::vector<int>(v.begin(), v.end())));
                return;
            }
            int hi = std::min(r == 0 ? max_cols : v[r - 1], max_cols);
            (void)bound;
            for (int x = 0; x <= hi; ++x) {
                v[r] = x;
                rec(r + 1);
            }
            v[r] = 0;
        };
        rec(0);
        return out;
    };

    // inner witnesses: T on mu/nu for every nu inside mu
    for (const Partition& nu : subpartitions(mu, std::max(1, mu.rows()), mu.row(0))) {
        if (!mu.contains(nu)) continue;
        SkewShape tshape(mu, nu);
        if (tshape.size() == 0 || tshape.size() > cap) continue;
        for (const Tableau& t : enumerate_syt(tshape, cap)) {
            Tableau r1 = switch_tableaux(t, u1).slid_outer;
            Tableau r2 = switch_tableaux(t, u2).slid_outer;
            if (!(r1.shape == r2.shape)) return false;
        }
    }
    // outer witnesses: T' on kappa/lambda with kappa in a 2-padded box
    for (const Partition& kappa : subpartitions(lam, lam.rows() + 2, lam.row(0) + 2)) {
        if (!kappa.contains(lam)) continue;
        int strip = kappa.size() - lam.size();
        if (strip == 0 || strip > cap) continue;
        SkewShape tshape(kappa, lam);
        for (const Tableau& t : enumerate_syt(tshape, cap)) {
            Tableau r1 = switch_tableaux(u1, t).slid_inner;
            Tableau r2 = switch_tableaux(u2, t).slid_inner;
            if (!(r1.shape == r2.shape)) return false;
        }
    }
    return true;
}

long catalan_nets(int d) {
    if (d < 1) throw std::invalid_argument("catalan_nets: d >= 1 required");
    BigInt binom = 1;
    for (int i = 1; i <= d - 1; ++i) binom = binom * (d - 1 + i) / i;
    if (binom % d != 0) throw std::logic_error("catalan count not integral");
    return (binom / d).convert_to<long>();
}

int sigma_sign(const Tableau& t, const Tableau& t0) {
    if (!(t.shape == t0.shape) || !t.shape.is_straight())
        throw std::invalid_argument("sigma_sign: straight equal shapes required");
    std::vector<int> perm(t.entries.size());
    for (std::size_t k = 0; k < t.entries.size(); ++k) perm[t0.entries[k] - 1] = t.entries[k] - 1;
    return permutation_sign(std::move(perm));
}

}  // namespace wronskit
