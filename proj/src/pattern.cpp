#include "fq/pattern.hpp"

#include "fq/parallel.hpp"

#include <algorithm>
#include <array>

namespace fq {

DisplacementPattern DisplacementPattern::make(std::vector<std::pair<i32, i32>> vectors) {
    if (vectors.empty())
        throw std::invalid_argument("a displacement pattern needs at least one vector");
    DisplacementPattern pat;
    pat.vectors = std::move(vectors);
    const u32 n = pat.size();
    for (auto [s, t] : pat.vectors)
        pat.max_norm = std::max({pat.max_norm, std::abs(s), std::abs(t)});
    pat.distinct_t = true;
    pat.unique_t_index = -1;
    for (u32 j = 0; j < n; ++j) {
        bool unique = true;
        for (u32 k = 0; k < n; ++k)
            if (k != j && pat.vectors[k].second == pat.vectors[j].second) {
                unique = false;
                break;
            }
        if (!unique) pat.distinct_t = false;
        if (unique && pat.unique_t_index < 0) pat.unique_t_index = (int)j;
    }
    return pat;
}

AdmissibleRegion admissible_region(OddPrime p, const DisplacementPattern& pattern) {
    const i64 pm1 = (i64)p.value() - 1;
    i64 min_s = 0, max_s = 0, min_t = 0, max_t = 0;
    for (auto [s, t] : pattern.vectors) {
        min_s = std::min<i64>(min_s, s);
        max_s = std::max<i64>(max_s, s);
        min_t = std::min<i64>(min_t, t);
        max_t = std::max<i64>(max_t, t);
    }
    AdmissibleRegion r;
    r.a_lo = std::max<i64>(0, -min_s);
    r.a_hi = std::min<i64>(pm1, pm1 - max_s);
    r.b_lo = std::max<i64>(1, 1 - min_t);
    r.b_hi = std::min<i64>(pm1, pm1 - max_t);
    u64 rows = r.a_hi >= r.a_lo ? (u64)(r.a_hi - r.a_lo + 1) : 0;
    u64 cols = r.b_hi >= r.b_lo ? (u64)(r.b_hi - r.b_lo + 1) : 0;
    r.cardinality = rows * cols;
    return r;
}

bool is_permutation(const Permutation& sigma, u32 n) {
    if (sigma.size() != n) return false;
    std::vector<bool> seen(n + 1, false);
    for (u32 v : sigma) {
        if (v < 1 || v > n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

std::vector<Permutation> all_permutations(u32 n) {
    if (n < 1 || n > 8) throw std::invalid_argument("permutation sweep limited to 1 <= N <= 8");
    Permutation cur(n);
    for (u32 i = 0; i < n; ++i) cur[i] = i + 1;
    std::vector<Permutation> out;
    do {
        out.push_back(cur);
    } while (std::next_permutation(cur.begin(), cur.end()));
    return out;
}

std::vector<double> SpannedPoint::coords() const {
    std::vector<double> c(residues.size());
    for (std::size_t j = 0; j < residues.size(); ++j) c[j] = residues[j] / (double)p;
    return c;
}

SpannedPoint span_point(const FermatQuotientTable& table, MatrixIndex origin,
                        const DisplacementPattern& pattern) {
    auto region = admissible_region(OddPrime::validate(table.p()), pattern);
    if (!region.contains(origin.a, origin.b))
        throw std::out_of_range("origin outside the admissible region of the pattern");
    SpannedPoint pt{origin, table.p(), {}};
    pt.residues.reserve(pattern.size());
    for (auto [s, t] : pattern.vectors)
        pt.residues.push_back(table.entry((u32)((i64)origin.a + s), (u32)((i64)origin.b + t)));
    return pt;
}

bool in_polyhedron(const SpannedPoint& point, const Permutation& sigma) {
    const u32 n = (u32)point.residues.size();
    if (!is_permutation(sigma, n))
        throw std::invalid_argument("sigma is not a permutation of 1..N");
    for (u32 k = 0; k + 1 < n; ++k)
        if (point.residues[sigma[k] - 1] >= point.residues[sigma[k + 1] - 1]) return false;
    return true;
}

namespace {

constexpr u32 max_single_n = 16;
constexpr u32 max_sweep_n = 8;

struct SweepTotals {
    std::vector<u64> counts; // one slot per tracked bucket
    u64 ties = 0;
};

// Row-partitioned sweep of the admissible region. `visit` sees the residue
// tuple of each origin and the per-chunk accumulator; chunk results are
// reduced by exact integer addition, so the worker count cannot change any
// total.
template <typename Visit>
SweepTotals sweep_region(const FermatQuotientTable& table, const DisplacementPattern& pattern,
                         const AdmissibleRegion& region, std::size_t buckets, Visit visit) {
    const u32 n = pattern.size();
    const u64 rows = region.empty() ? 0 : (u64)(region.a_hi - region.a_lo + 1);
    const std::size_t n_chunks = rows ? plan_chunks(rows) : 0;
    std::vector<SweepTotals> partial(n_chunks);

    run_chunks(n_chunks, [&](std::size_t ch) {
        auto [r0, r1] = chunk_range(rows, n_chunks, ch);
        SweepTotals acc;
        acc.counts.assign(buckets, 0);
        std::array<u32, max_single_n> res{};
        for (u64 r = r0; r < r1; ++r) {
            const i64 a = region.a_lo + (i64)r;
            for (i64 b = region.b_lo; b <= region.b_hi; ++b) {
                for (u32 j = 0; j < n; ++j)
                    res[j] = table.entry((u32)(a + pattern.vectors[j].first),
                                         (u32)(b + pattern.vectors[j].second));
                visit(res.data(), acc);
            }
        }
        partial[ch] = std::move(acc);
    });

    SweepTotals total;
    total.counts.assign(buckets, 0);
    for (auto& part : partial) {
        for (std::size_t i = 0; i < buckets; ++i) total.counts[i] += part.counts[i];
        total.ties += part.ties;
    }
    return total;
}

double factorial(u32 n) {
    double f = 1.0;
    for (u32 i = 2; i <= n; ++i) f *= i;
    return f;
}

PatternCountReport make_report(const FermatQuotientTable& table,
                               const DisplacementPattern& pattern, Permutation sigma,
                               const AdmissibleRegion& region, u64 count, u64 ties) {
    PatternCountReport rep;
    rep.p = table.p();
    rep.pattern = pattern;
    rep.sigma = std::move(sigma);
    rep.region_card = region.cardinality;
    rep.count = count;
    rep.tie_count = ties;
    rep.main_term = (double)table.p() * table.p() / factorial(pattern.size());
    rep.ratio = count ? rep.main_term / (double)count : 0.0;
    return rep;
}

} // namespace

PatternCountReport count_pattern(const FermatQuotientTable& table,
                                 const DisplacementPattern& pattern, const Permutation& sigma) {
    const u32 n = pattern.size();
    if (n > max_single_n)
        throw std::invalid_argument("pattern too wide for a single-permutation count (N <= 16)");
    if (!is_permutation(sigma, n))
        throw std::invalid_argument("sigma is not a permutation of 1..N");

    auto region = admissible_region(OddPrime::validate(table.p()), pattern);
    auto totals = sweep_region(
        table, pattern, region, 1, [&](const u32* res, SweepTotals& acc) {
            std::array<u32, max_single_n> sorted;
            std::copy(res, res + n, sorted.begin());
            std::sort(sorted.begin(), sorted.begin() + n);
            if (std::adjacent_find(sorted.begin(), sorted.begin() + n) != sorted.begin() + n) {
                ++acc.ties;
                return;
            }
            for (u32 k = 0; k + 1 < n; ++k)
                if (res[sigma[k] - 1] >= res[sigma[k + 1] - 1]) return;
            ++acc.counts[0];
        });
    return make_report(table, pattern, sigma, region, totals.counts[0], totals.ties);
}

std::vector<PatternCountReport> count_all_permutations(const FermatQuotientTable& table,
                                                       const DisplacementPattern& pattern) {
    const u32 n = pattern.size();
    if (n > max_sweep_n)
        throw std::invalid_argument("all-permutation sweep limited to N <= 8");

    auto perms = all_permutations(n);

    // Lexicographic rank of the sorting permutation via its Lehmer code.
    std::array<u64, max_sweep_n + 1> fact{};
    fact[0] = 1;
    for (u32 i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;

    auto region = admissible_region(OddPrime::validate(table.p()), pattern);
    auto totals = sweep_region(
        table, pattern, region, perms.size(), [&](const u32* res, SweepTotals& acc) {
            // order[k] = index (0-based) of the k-th smallest coordinate.
            std::array<u32, max_sweep_n> order;
            for (u32 j = 0; j < n; ++j) order[j] = j;
            for (u32 j = 1; j < n; ++j) { // insertion sort by residue value
                u32 o = order[j], k = j;
                while (k > 0 && res[order[k - 1]] > res[o]) {
                    order[k] = order[k - 1];
                    --k;
                }
                order[k] = o;
            }
            for (u32 j = 0; j + 1 < n; ++j)
                if (res[order[j]] == res[order[j + 1]]) {
                    ++acc.ties;
                    return;
                }
            u64 rank = 0;
            for (u32 j = 0; j < n; ++j) {
                u32 smaller = 0;
                for (u32 k = j + 1; k < n; ++k)
                    if (order[k] < order[j]) ++smaller;
                rank += smaller * fact[n - 1 - j];
            }
            ++acc.counts[rank];
        });

    std::vector<PatternCountReport> out;
    out.reserve(perms.size());
    for (std::size_t i = 0; i < perms.size(); ++i)
        out.push_back(make_report(table, pattern, perms[i], region, totals.counts[i], totals.ties));
    return out;
}

PointSets emit_point_sets(const FermatQuotientTable& table, const DisplacementPattern& pattern,
                          const Permutation& sigma) {
    const u32 n = pattern.size();
    if (!is_permutation(sigma, n))
        throw std::invalid_argument("sigma is not a permutation of 1..N");
    auto region = admissible_region(OddPrime::validate(table.p()), pattern);

    PointSets sets;
    sets.p = table.p();
    if (region.empty()) return sets;

    std::vector<u32> res(n);
    for (i64 a = region.a_lo; a <= region.a_hi; ++a)
        for (i64 b = region.b_lo; b <= region.b_hi; ++b) {
            for (u32 j = 0; j < n; ++j)
                res[j] = table.entry((u32)(a + pattern.vectors[j].first),
                                     (u32)(b + pattern.vectors[j].second));
            bool ordered = true;
            for (u32 k = 0; k + 1 < n && ordered; ++k)
                ordered = res[sigma[k] - 1] < res[sigma[k + 1] - 1];
            if (!ordered) continue;
            sets.origins.push_back(MatrixIndex{(u32)a, (u32)b});
            sets.residues.push_back(res);
        }
    return sets;
}

} // namespace fq
