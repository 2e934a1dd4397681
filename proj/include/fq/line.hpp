#pragma once

#include "fq/table.hpp"

#include <cstdint>
#include <optional>

namespace fq {

/// A straight line y = Cx + D taken mod 1, C != 0.
struct LineSpec {
    double c;
    double d;

    static LineSpec make(double c, double d);

    /// True when both coefficients are (mathematically) integers, which
    /// unlocks the exact integer summation path.
    bool integer_coeffs() const;

    /// Informational: |C| within the slope regime of the mean-distance
    /// asymptotic for this p (|C| <= p^(1/12) / log^(2/3) p).
    bool in_slope_regime(OddPrime p) const;
};

/// Fractional part {Cx + D} in [0, 1).
double line_value(const LineSpec& line, double x);

struct MeanDistanceResult {
    u32 p;
    LineSpec line;
    double mean;        // (1/p) sum_b |q_p(b)/p - {C b/p + D}|
    double deviation;   // |mean - 1/3|
    double error_scale; // |C|^(3/5) p^(-1/20) log^(2/5) p
    bool exact_path;    // integer C, D: mean = exact_numerator / p^2
    u64 exact_numerator;
};

/// Mean distance from the quotient point (b/p, q_p(b)/p) to the line mod 1.
/// Integer C and D are summed exactly; otherwise chunked compensated
/// summation with a fixed reduction order.
MeanDistanceResult mean_line_distance(const FermatQuotientTable& table, const LineSpec& line);

/// The limit integral of |y - {Cx+D}| over y in [0,1] and one full period
/// of x (the inner integral in closed form, midpoint rule in x). Converges
/// to 1/3 for every C != 0 as steps grows. steps >= 10.
double integral_line_distance(const LineSpec& line, u64 steps);

/// Same integrand over the unit square in x instead of one period; for
/// non-integer C this differs from 1/3 by O(1/C). Accepts c == 0.
/// Midpoint rule with cells split at the jumps of {cx+d}.
double integral_line_distance_unit(double c, double d, u64 steps);

/// Closed-form antiderivative evaluation of the unit-square integral.
double integral_line_distance_unit_exact(double c, double d);

/// Closed-form per-period value (exactly 1/3 up to roundoff; evaluated,
/// not hardcoded). Rejects c == 0.
double integral_line_distance_exact(const LineSpec& line);

} // namespace fq
