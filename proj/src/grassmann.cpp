#include "wronskit/grassmann.hpp"

#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace wronskit {

namespace {

BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

long to_long_checked(const BigInt& v, const char* what) {
    if (v > BigInt(std::numeric_limits<long>::max()) || v < BigInt(std::numeric_limits<long>::min()))
        throw std::overflow_error(std::string(what) + ": value exceeds long range");
    return v.convert_to<long>();
}

}  // namespace

BigInt syt_count_big(const SkewShape& shape) {
    if (shape.is_straight()) {
        // hook length formula
        const Partition& lam = shape.outer;
        int n = lam.size();
        if (n == 0) return 1;
        std::vector<int> conj(lam.parts.empty() ? 0 : lam.parts[0], 0);
        for (int r = 0; r < lam.rows(); ++r)
            for (int c = 0; c < lam.parts[r]; ++c) conj[c]++;
        BigInt num = factorial(n), den = 1;
        for (int r = 0; r < lam.rows(); ++r)
            for (int c = 0; c < lam.parts[r]; ++c)
                den *= (lam.parts[r] - c) + (conj[c] - r) - 1;
        if (num % den != 0) throw std::logic_error("hook length count not integral");
        return num / den;
    }
    // skew: count lattice growths, memoized on the row-fill profile
    std::map<std::vector<int>, BigInt> memo;
    std::vector<int> start(shape.rows());
    for (int r = 0; r < shape.rows(); ++r) start[r] = shape.inner.row(r);
    std::function<BigInt(std::vector<int>&)> count = [&](std::vector<int>& fill) -> BigInt {
        bool done = true;
        for (int r = 0; r < shape.rows(); ++r)
            if (fill[r] != shape.outer.row(r)) { done = false; break; }
        if (done) return 1;
        auto it = memo.find(fill);
        if (it != memo.end()) return it->second;
        BigInt total = 0;
        for (int r = 0; r < shape.rows(); ++r) {
            if (fill[r] >= shape.outer.row(r)) continue;
            // the next cell of row r is addable iff the cell above is filled
            if (r > 0 && fill[r - 1] <= fill[r]) continue;
            ++fill[r];
            total += count(fill);
            --fill[r];
        }
        memo[fill] = total;
        return total;
    };
    return count(start);
}

long syt_count(const SkewShape& shape) {
    return to_long_checked(syt_count_big(shape), "syt_count");
}

std::vector<std::vector<int>> enumerate_standard_fillings(const SkewShape& shape, int cap) {
    const int n = shape.size();
    if (n > cap) throw std::invalid_argument("enumerate_standard_fillings: size cap exceeded");
    auto cells = shape.cells();
    // map cell -> index into the row-major cell list
    std::map<std::pair<int, int>, int> idx;
    for (int i = 0; i < int(cells.size()); ++i) idx[cells[i]] = i;

    std::vector<std::vector<int>> out;
    std::vector<int> entries(cells.size(), 0);
    std::vector<int> fill(shape.rows());
    for (int r = 0; r < shape.rows(); ++r) fill[r] = shape.inner.row(r);

    std::function<void(int)> rec = [&](int next) {
        if (next > n) {
            out.push_back(entries);
            return;
        }
        for (int r = 0; r < shape.rows(); ++r) {
            if (fill[r] >= shape.outer.row(r)) continue;
            if (r > 0 && fill[r - 1] <= fill[r]) continue;
            entries[idx[{r, fill[r]}]] = next;
            ++fill[r];
            rec(next + 1);
            --fill[r];
        }
    };
    rec(1);
    // lexicographic by row-reading word
    std::sort(out.begin(), out.end());
    return out;
}

long degree_iota(int n, int d) {
    if (!(0 < n && n < d)) throw std::invalid_argument("degree_iota needs 0 < n < d");
    const int N = (n + 1) * (d - n);
    BigInt num = factorial(N);
    for (int i = 1; i <= n; ++i) num *= factorial(i);
    BigInt den = 1;
    for (int i = d - n; i <= d; ++i) den *= factorial(i);
    if (num % den != 0) throw std::logic_error("degree formula not integral");
    return to_long_checked(num / den, "degree_iota");
}

namespace {

// all partitions nu with mu ⊆ nu, nu/mu a horizontal strip of given size,
// nu inside the (rows x cols) box
void horizontal_strips(const Partition& mu, int strip, int rows, int cols,
                       std::vector<Partition>& out) {
    std::vector<int> nu(rows, 0);
    for (int r = 0; r < rows; ++r) nu[r] = mu.row(r);
    std::function<void(int, int)> rec = [&](int r, int remaining) {
        if (r == rows) {
            if (remaining == 0) out.push_back(Partition(std::vector<int>(nu.begin(), nu.end())));
            return;
        }
        int lo = mu.row(r);
        int hi = std::min(r == 0 ? cols : nu[r - 1], lo + remaining);
        // horizontal strip: nu_r <= mu_{r-1}
        if (r > 0) hi = std::min(hi, mu.row(r - 1));
        for (int v = lo; v <= hi; ++v) {
            nu[r] = v;
            rec(r + 1, remaining - (v - lo));
        }
        nu[r] = mu.row(r);
    };
    rec(0, strip);
}

// Multiply a class-map by sigma_lambda inside the (rows x cols) box.
// LR fillings of nu/mu with content lambda are chains
// mu = nu^0 ⊆ nu^1 ⊆ ... ⊆ nu^l = nu of horizontal strips (value v occupies
// nu^v / nu^{v-1}), filtered by the lattice condition on the reverse reading
// word. Scanning a row right-to-left meets each value as one consecutive
// group, so it suffices to check the prefix counts after each group.
void lr_expand(const std::map<Partition, BigInt>& in, const Partition& lambda, int rows, int cols,
               std::map<Partition, BigInt>& out) {
    const int l = lambda.rows();
    for (const auto& [mu, mult] : in) {
        std::vector<Partition> chain{mu};
        std::function<void(int)> rec = [&](int v) {
            if (v == l) {
                std::vector<int> cnt(l, 0);
                for (int r = 0; r < rows; ++r)
                    for (int w = l - 1; w >= 0; --w) {
                        cnt[w] += chain[w + 1].row(r) - chain[w].row(r);
                        if (w > 0 && cnt[w] > cnt[w - 1]) return;
                    }
                out[chain.back()] += mult;
                return;
            }
            std::vector<Partition> nus;
            horizontal_strips(chain.back(), lambda.parts[v], rows, cols, nus);
            for (Partition& nu : nus) {
                chain.push_back(std::move(nu));
                rec(v + 1);
                chain.pop_back();
            }
        };
        rec(0);
    }
}

}  // namespace

long lr_coefficient(const Partition& mu, const Partition& lambda, const Partition& nu) {
    int rows = std::max(nu.rows(), std::max(mu.rows(), lambda.rows()));
    int cols = nu.parts.empty() ? 0 : nu.parts[0];
    std::map<Partition, BigInt> in{{mu, 1}}, out;
    lr_expand(in, lambda, rows, cols, out);
    auto it = out.find(nu);
    return it == out.end() ? 0 : to_long_checked(it->second, "lr_coefficient");
}

long schubert_count(const SchubertProblem& problem) {
    const int n = problem.n, d = problem.d;
    if (!problem.is_complete())
        throw incomplete_problem_error("schubert_count: codimensions sum to " +
                                       std::to_string(problem.total_codim()) + ", expected " +
                                       std::to_string((n + 1) * (d - n)));
    std::map<Partition, BigInt> state{{Partition{}, 1}};
    for (const auto& cond : problem.conditions) {
        Partition lam = partition_of(cond.first);
        if (lam.size() == 0) continue;
        std::map<Partition, BigInt> next;
        lr_expand(state, lam, n + 1, d - n, next);
        state = std::move(next);
    }
    auto it = state.find(Partition::rectangle(n + 1, d - n));
    return it == state.end() ? 0 : to_long_checked(it->second, "schubert_count");
}

BigInt real_degree_formula(int n, int d) {
    const int m = std::max(n + 1, d - n), p = std::min(n + 1, d - n);
    // p = 1 is the single-column rectangle: one tableau, degree 1. The closed
    // formula (and its parity clause) needs mp even and does not cover this.
    if (p == 1) return 1;
    if (d % 2 == 1) return 0;
    BigInt num = 1, den = 1;
    for (int i = 1; i <= p - 1; ++i) num *= factorial(i);
    for (int i = m - p + 1; i <= m - 1; ++i) num *= factorial(i);
    num *= factorial(m * p / 2);
    for (int i = m - p + 2; i <= m + p - 2; i += 2) den *= factorial(i);
    for (int i = m - p + 1; i <= m + p - 1; i += 2) den *= factorial(i / 2);
    if (num % den != 0) throw std::logic_error("real degree formula not integral");
    return num / den;
}

long real_degree(int n, int d) {
    if (!(0 < n && n < d)) throw std::invalid_argument("real_degree needs 0 < n < d");
    SkewShape rect(Partition::rectangle(n + 1, d - n));
    auto fillings = enumerate_standard_fillings(rect, 24);
    // anchor: the row-reading filling, which is the row-major 1..N sequence
    long sum = 0;
    for (const auto& t : fillings) {
        std::vector<int> perm(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) perm[k] = t[k] - 1;
        sum += permutation_sign(std::move(perm));
    }
    BigInt formula = real_degree_formula(n, d);
    if (BigInt(sum < 0 ? -sum : sum) != formula)
        throw std::logic_error("real_degree: sign sum disagrees with the closed formula");
    return sum;
}

SchubertProblem parse_schubert_problem(const std::string& text) {
    auto colon = text.find(':');
    auto lpar = text.find('(');
    auto comma = text.find(',', lpar);
    auto rpar = text.find(')', lpar);
    if (colon == std::string::npos || lpar == std::string::npos || comma == std::string::npos ||
        rpar == std::string::npos || text.substr(0, lpar) != "G")
        throw std::invalid_argument("schubert problem must start with \"G(n,d):\"");
    SchubertProblem p;
    p.n = std::stoi(text.substr(lpar + 1, comma - lpar - 1));
    p.d = std::stoi(text.substr(comma + 1, rpar - comma - 1));
    std::istringstream in(text.substr(colon + 1));
    std::string tok;
    while (in >> tok) {
        std::string cond = tok, point;
        if (auto at = tok.find('@'); at != std::string::npos) {
            cond = tok.substr(0, at);
            point = tok.substr(at + 1);
        }
        RamificationSeq seq;
        if (cond == "i") {
            seq = RamificationSeq::iota(p.n, p.d);
        } else {
            std::vector<int> a;
            std::istringstream cs(cond);
            std::string part;
            while (std::getline(cs, part, ',')) a.push_back(std::stoi(part));
            seq = RamificationSeq(std::move(a), p.n, p.d);
        }
        std::optional<RP1Point> s;
        if (!point.empty())
            s = (point == "inf" || point == "oo") ? RP1Point::infinity() : RP1Point{std::stod(point), false};
        p.conditions.emplace_back(std::move(seq), s);
    }
    return p;
}

std::string format_schubert_problem(const SchubertProblem& p) {
    std::ostringstream os;
    os << "G(" << p.n << "," << p.d << "):";
    for (const auto& [a, s] : p.conditions) {
        os << " ";
        if (a == RamificationSeq::iota(p.n, p.d)) {
            os << "i";
        } else {
            for (int i = 0; i <= a.n; ++i) os << (i ? "," : "") << a.a[i];
        }
        if (s) {
            os << "@";
            if (s->inf) os << "inf";
            else os << s->value;
        }
    }
    return os.str();
}

}  // namespace wronskit
