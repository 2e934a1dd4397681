#pragma once

#include "fq/pattern.hpp"

#include <complex>
#include <vector>

namespace fq {

/// An exponential sum with integer phases k/p. Construction accumulates
/// exact per-phase counts; the complex value is a fixed-order O(p)
/// evaluation of the histogram, so it is bit-identical for any worker
/// count and any summation partition.
struct ExpSumResult {
    std::complex<double> value;
    double norm;           // |value|
    double bound;          // the applicable theoretical cap
    bool bound_applicable; // whether the hypotheses behind `bound` hold
    u64 terms;             // number of unit-modulus summands
};

/// The complete sum S0(p) = sum over a in [0,p), b in [1,p) of
/// e(<h, x_{a,b}>), with shifted indices reduced mod p into the standard
/// representatives. Columns where some b + t_j = 0 (mod p) would make the
/// quotient undefined are skipped. Evaluated by collapsing the inner
/// a-sum (full geometric sum: p when the phase increment vanishes mod p,
/// a uniform pass over all residues otherwise). bound = N*p, applicable
/// when some h_j != 0 has t_j distinct (mod p) from every other t.
ExpSumResult complete_exp_sum(const FermatQuotientTable& table,
                              const DisplacementPattern& pattern,
                              const std::vector<i64>& h);

/// The same sum evaluated literally, one (a,b) term at a time. Exists as
/// the second route of the dual evaluation; agrees with complete_exp_sum
/// bit-for-bit because both reduce to identical phase histograms.
ExpSumResult complete_exp_sum_direct(const FermatQuotientTable& table,
                                     const DisplacementPattern& pattern,
                                     const std::vector<i64>& h);

/// S(p): the sum restricted to the admissible region. Satisfies
/// |S - S0| <= 4Mp (boundary terms only); bound = N*p + 4*M*p.
ExpSumResult pattern_exp_sum(const FermatQuotientTable& table,
                             const DisplacementPattern& pattern,
                             const std::vector<i64>& h);

/// sum over X < n <= X+Y, gcd(n,p)=1 of e(m q_p(n) / p), with
/// bound = Y^(1/2) p^(3/8) (unit implied constant; compare as a ratio).
/// Requires gcd(m,p)=1, X >= 0, Y >= 1, X+Y <= p^2-1.
ExpSumResult heath_brown_sum(const FermatQuotientTable& table, i64 m, u64 X, u64 Y);

} // namespace fq
