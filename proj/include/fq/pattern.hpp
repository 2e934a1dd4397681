#pragma once

#include "fq/table.hpp"

#include <utility>
#include <vector>

namespace fq {

/// Ordered displacement vectors v_j = (s_j, t_j) spanning N matrix entries
/// from a common origin.
struct DisplacementPattern {
    std::vector<std::pair<i32, i32>> vectors;
    i32 max_norm = 0;        // M = max_j max(|s_j|, |t_j|)
    bool distinct_t = true;  // all t_j pairwise distinct
    int unique_t_index = -1; // first j whose t_j differs from every other; -1 if none

    static DisplacementPattern make(std::vector<std::pair<i32, i32>> vectors);

    u32 size() const { return (u32)vectors.size(); }
};

/// Origins (a,b) whose translates by every v_j stay inside the index box
/// [0,p-1] x [1,p-1]. Closed-form interval intersection; possibly empty.
struct AdmissibleRegion {
    i64 a_lo, a_hi;
    i64 b_lo, b_hi;
    u64 cardinality;

    bool empty() const { return cardinality == 0; }
    bool contains(i64 a, i64 b) const {
        return a >= a_lo && a <= a_hi && b >= b_lo && b <= b_hi;
    }
};

AdmissibleRegion admissible_region(OddPrime p, const DisplacementPattern& pattern);

/// sigma as the sequence (sigma(1), ..., sigma(N)) with entries in 1..N.
using Permutation = std::vector<u32>;

bool is_permutation(const Permutation& sigma, u32 n);

/// All permutations of {1..n} in lexicographic order (n <= 8).
std::vector<Permutation> all_permutations(u32 n);

/// One point of the spanned set: residues[j] = A_{(a,b)+v_j}, so the
/// normalized coordinates are residues[j] / p.
struct SpannedPoint {
    MatrixIndex origin;
    u32 p;
    std::vector<u32> residues;

    std::vector<double> coords() const;
};

SpannedPoint span_point(const FermatQuotientTable& table, MatrixIndex origin,
                        const DisplacementPattern& pattern);

/// Strict membership in the order polyhedron: coordinates permuted by sigma
/// increase strictly. Any tie excludes the point from every polyhedron.
bool in_polyhedron(const SpannedPoint& point, const Permutation& sigma);

struct PatternCountReport {
    u32 p;
    DisplacementPattern pattern;
    Permutation sigma;
    u64 region_card;
    u64 count;     // origins whose spanned point lands in T(sigma, N)
    u64 tie_count; // origins with two equal coordinates (in no polyhedron)
    double main_term; // p^2 / N!
    double ratio;     // main_term / count
};

/// Exact count over the admissible region for one permutation. Comparisons
/// are made on integer residues; N <= 16.
PatternCountReport count_pattern(const FermatQuotientTable& table,
                                 const DisplacementPattern& pattern,
                                 const Permutation& sigma);

/// One sweep of the region filling every T(sigma, N) bucket plus the tie
/// channel; the counts partition the region exactly. N <= 8. Reports come
/// back in lexicographic sigma order.
std::vector<PatternCountReport> count_all_permutations(const FermatQuotientTable& table,
                                                       const DisplacementPattern& pattern);

/// The matched point sets behind a count: origins (a,b) in row-major order
/// and their spanned residue tuples.
struct PointSets {
    u32 p;
    std::vector<MatrixIndex> origins;
    std::vector<std::vector<u32>> residues;
};

PointSets emit_point_sets(const FermatQuotientTable& table,
                          const DisplacementPattern& pattern,
                          const Permutation& sigma);

} // namespace fq
