#pragma once

#include "fq/pattern.hpp"
#include "fq/prime.hpp"
#include "fq/table.hpp"

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace fqtest {

// Platform-stable uniform draw from [0, n): mt19937_64 is pinned by the
// standard, but uniform_int_distribution is not, so roll our own.
inline fq::u64 rand_below(std::mt19937_64& rng, fq::u64 n) {
    fq::u64 limit = UINT64_MAX - UINT64_MAX % n;
    fq::u64 v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

inline double rand_unit(std::mt19937_64& rng) {
    return (double)(rng() >> 11) * 0x1.0p-53;
}

// Exact brute-force extreme discrepancy: every pair of candidate endpoints
// (0, 1 and the sample values), every open/closed combination, counts by
// scanning the sorted sequence. Independent of the production formula.
inline double discrepancy_bruteforce(std::span<const double> values) {
    std::vector<double> x(values.begin(), values.end());
    std::sort(x.begin(), x.end());
    const double n = (double)x.size();

    std::vector<double> cand{0.0, 1.0};
    cand.insert(cand.end(), x.begin(), x.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    auto count_points = [&](double lo, bool lo_open, double hi, bool hi_open) {
        std::size_t c = 0;
        for (double v : x) {
            bool above = lo_open ? v > lo : v >= lo;
            bool below = hi_open ? v < hi : v <= hi;
            if (above && below) ++c;
        }
        return (double)c;
    };

    double best = 0.0;
    for (std::size_t i = 0; i < cand.size(); ++i)
        for (std::size_t j = i; j < cand.size(); ++j) {
            double measure = cand[j] - cand[i];
            for (bool lo_open : {false, true})
                for (bool hi_open : {false, true}) {
                    if (cand[i] == cand[j] && (lo_open || hi_open)) continue;
                    double c = count_points(cand[i], lo_open, cand[j], hi_open);
                    best = std::max(best, std::abs(c - n * measure));
                }
        }
    return best / n;
}

// Independent pattern count: every quotient recomputed from the
// exponentiation oracle, no FermatQuotientTable involved.
inline fq::u64 pattern_count_oracle(fq::OddPrime p, const fq::DisplacementPattern& pattern,
                                    const fq::Permutation& sigma) {
    const fq::i64 pv = p.value();
    auto region = fq::admissible_region(p, pattern);
    fq::u64 count = 0;
    std::vector<fq::u32> res(pattern.size());
    for (fq::i64 a = region.a_lo; a <= region.a_hi; ++a)
        for (fq::i64 b = region.b_lo; b <= region.b_hi; ++b) {
            for (std::size_t j = 0; j < pattern.size(); ++j) {
                fq::i64 aj = a + pattern.vectors[j].first;
                fq::i64 bj = b + pattern.vectors[j].second;
                res[j] = fq::fermat_quotient_oracle((fq::u64)(aj * pv + bj), p);
            }
            bool ok = true;
            for (std::size_t k = 0; k + 1 < sigma.size() && ok; ++k)
                ok = res[sigma[k] - 1] < res[sigma[k + 1] - 1];
            if (ok) ++count;
        }
    return count;
}

// Literal complete sum via the exponentiation oracle (independent route).
inline std::complex<double> complete_exp_sum_oracle(fq::OddPrime p,
                                                    const fq::DisplacementPattern& pattern,
                                                    const std::vector<fq::i64>& h) {
    const fq::i64 pv = p.value();
    const double w = 2.0 * std::numbers::pi / (double)pv;
    std::complex<double> total = 0.0;
    for (fq::i64 b = 1; b < pv; ++b) {
        bool skip = false;
        for (auto [s, t] : pattern.vectors)
            if (((b + t) % pv + pv) % pv == 0) skip = true;
        if (skip) continue;
        for (fq::i64 a = 0; a < pv; ++a) {
            double phase = 0.0;
            for (std::size_t j = 0; j < pattern.size(); ++j) {
                fq::i64 aj = ((a + pattern.vectors[j].first) % pv + pv) % pv;
                fq::i64 bj = ((b + pattern.vectors[j].second) % pv + pv) % pv;
                phase += (double)h[j] *
                         fq::fermat_quotient_oracle((fq::u64)(aj * pv + bj), p);
            }
            total += std::polar(1.0, w * std::fmod(phase, (double)pv));
        }
    }
    return total;
}

// Ordered index-tuple counts by literal enumeration.
inline std::pair<fq::u64, fq::u64> ordered_box_counts_bruteforce(fq::u32 N, fq::u32 L) {
    std::vector<fq::u32> idx(N, 1);
    fq::u64 strict = 0, ties = 0;
    for (;;) {
        bool inc = true, nondec = true;
        for (fq::u32 j = 0; j + 1 < N; ++j) {
            if (idx[j] >= idx[j + 1]) inc = false;
            if (idx[j] > idx[j + 1]) nondec = false;
        }
        strict += inc;
        ties += nondec;
        fq::u32 j = 0;
        while (j < N && idx[j] == L) idx[j++] = 1;
        if (j == N) break;
        ++idx[j];
    }
    return {strict, ties};
}

} // namespace fqtest
