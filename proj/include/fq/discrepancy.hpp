#pragma once

#include "fq/prime.hpp"

#include <span>
#include <vector>

namespace fq {

/// Exact uniform (extreme) discrepancy of a finite sequence in [0,1]:
/// sup over closed intervals [alpha,beta] of |#(S in [a,b]) - |S|(b-a)|,
/// divided by |S|. The sup is attained with endpoints at sample points or
/// just outside them, so it is computed exactly from the sorted sequence.
double uniform_discrepancy(std::span<const double> values);

/// Star discrepancy (intervals anchored at 0), O(n log n).
double star_discrepancy(std::span<const double> values);

/// Unnormalized counting-discrepancy cap: |S|/K + 3 sum_{m=1..K} (1/m)
/// |sum_s e(ms)|. Requires K > 1.
double erdos_turan_bound(std::span<const double> values, u32 K);

/// r(h) = prod max(1, |h_i|), overflow-checked.
u64 r_of_h(std::span<const i64> h);

/// sum over 0 < ||h||_inf <= H of 1/r(h), by the separable identity
/// (1 + 2 sum_{k<=H} 1/k)^N - 1. Requires H >= 2.
double sum_inverse_r(u32 N, u64 H);

/// The Koksma-Szusz quantity c_n * (2/(H+1) + sum over 0 < ||h||_inf <= H
/// of (1/r(h)) |(1/R) sum_j e(<h, x_j>)|). The dimensional constant is
/// abstract; it defaults to 1 and comparisons should be logged as ratios.
double koksma_szusz_bound(const std::vector<std::vector<double>>& points, u32 H,
                          double c_n = 1.0);

/// Max over the L^N grid boxes of |count/R - L^(-N)|; a lower bound for
/// the extreme discrepancy. Requires L >= 2 and L^N <= 10^8.
double box_count_discrepancy(const std::vector<std::vector<double>>& points, u32 L);

/// B*(N,L) = #strictly increasing N-tuples from {1..L} = C(L,N), and
/// B(N,L) = #nondecreasing ones = C(L+N-1,N). Exact, overflow-checked.
struct OrderedBoxCounts {
    u64 strict;    // boxes fully inside the order polyhedron
    u64 with_ties; // boxes meeting it
};
OrderedBoxCounts ordered_box_counts(u32 N, u32 L);

} // namespace fq
