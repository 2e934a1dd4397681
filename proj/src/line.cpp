#include "fq/line.hpp"

#include "fq/parallel.hpp"

#include <cmath>
#include <vector>

namespace fq {

LineSpec LineSpec::make(double c, double d) {
    if (c == 0.0 || !std::isfinite(c) || !std::isfinite(d))
        throw std::domain_error("line slope must be finite and nonzero");
    return LineSpec{c, d};
}

bool LineSpec::integer_coeffs() const {
    return std::nearbyint(c) == c && std::nearbyint(d) == d &&
           std::abs(c) < 9.0e15 && std::abs(d) < 9.0e15;
}

bool LineSpec::in_slope_regime(OddPrime p) const {
    double lp = std::log((double)p.value());
    return std::abs(c) <= std::pow((double)p.value(), 1.0 / 12.0) * std::pow(lp, -2.0 / 3.0);
}

double line_value(const LineSpec& line, double x) {
    double v = std::fmod(line.c * x + line.d, 1.0);
    return v < 0.0 ? v + 1.0 : v;
}

namespace {

double fractional(double v) {
    double f = std::fmod(v, 1.0);
    return f < 0.0 ? f + 1.0 : f;
}

// Kahan-compensated accumulator.
struct Compensated {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace

MeanDistanceResult mean_line_distance(const FermatQuotientTable& table, const LineSpec& line) {
    const u32 p = table.p();
    const double dp = (double)p;

    MeanDistanceResult res{};
    res.p = p;
    res.line = line;
    res.exact_path = line.integer_coeffs();
    res.exact_numerator = 0;

    if (res.exact_path) {
        // |q_p(b)/p - {Cb/p + D}| = |q_p(b) - (Cb mod p)| / p with integer
        // C, D (the intercept drops out entirely).
        i64 ci = (i64)line.c % (i64)p;
        u32 c_res = (u32)(ci < 0 ? ci + (i64)p : ci);
        const std::size_t total = p - 1;
        const std::size_t n_chunks = plan_chunks(total);
        std::vector<u64> partial(n_chunks, 0);
        run_chunks(n_chunks, [&](std::size_t ch) {
            auto [lo, hi] = chunk_range(total, n_chunks, ch);
            u64 acc = 0;
            for (std::size_t i = lo; i < hi; ++i) {
                u32 b = (u32)(i + 1);
                u32 r = (u32)((u64)c_res * b % p);
                u32 q = table.base(b);
                acc += q >= r ? q - r : r - q;
            }
            partial[ch] = acc;
        });
        u64 numer = 0;
        for (u64 v : partial) numer += v;
        res.exact_numerator = numer;
        res.mean = (double)numer / (dp * dp);
    } else {
        const std::size_t total = p - 1;
        const std::size_t n_chunks = plan_chunks(total);
        std::vector<double> partial(n_chunks, 0.0);
        run_chunks(n_chunks, [&](std::size_t ch) {
            auto [lo, hi] = chunk_range(total, n_chunks, ch);
            Compensated acc;
            for (std::size_t i = lo; i < hi; ++i) {
                u32 b = (u32)(i + 1);
                double y = table.base(b) / dp;
                double g = fractional(line.c * (b / dp) + line.d);
                acc.add(std::abs(y - g));
            }
            partial[ch] = acc.sum;
        });
        Compensated tot;
        for (double v : partial) tot.add(v);
        res.mean = tot.sum / dp;
    }

    res.deviation = std::abs(res.mean - 1.0 / 3.0);
    res.error_scale = std::pow(std::abs(line.c), 0.6) * std::pow(dp, -0.05) *
                      std::pow(std::log(dp), 0.4);
    return res;
}

namespace {

// Inner y-integral of |y - g| over [0,1]: g^2 - g + 1/2.
double inner_closed_form(double g) { return g * g - g + 0.5; }

// Antiderivative of u -> {u}^2 - {u} + 1/2; each unit period adds 1/3.
double sawtooth_antiderivative(double t) {
    double n = std::floor(t);
    double f = t - n;
    return n / 3.0 + f * f * f / 3.0 - f * f / 2.0 + f / 2.0;
}

// Midpoint quadrature of x -> {cx+d}^2 - {cx+d} + 1/2 over [x0, x1] with
// `steps` uniform cells; cells containing a jump of {cx+d} are split at
// the jump so every evaluation sees a smooth piece.
double midpoint_with_splits(double c, double d, double x0, double x1, u64 steps) {
    const double width = (x1 - x0) / (double)steps;

    auto cell_value = [&](u64 i) {
        double a = x0 + width * (double)i;
        double b = (i + 1 == steps) ? x1 : a + width;
        // Jumps sit where cx + d crosses an integer.
        double ua = c * a + d, ub = c * b + d;
        double klo = std::ceil(std::min(ua, ub));
        double khi = std::floor(std::max(ua, ub));
        double acc = 0.0;
        double prev = a;
        if (c != 0.0 && klo <= khi) {
            // Walk the breakpoints in increasing x order.
            double kbeg = c > 0 ? klo : khi;
            double kstep = c > 0 ? 1.0 : -1.0;
            for (double k = kbeg; c > 0 ? k <= khi : k >= klo; k += kstep) {
                double xb = (k - d) / c;
                if (xb <= prev || xb >= b) continue;
                double mid = 0.5 * (prev + xb);
                acc += inner_closed_form(fractional(c * mid + d)) * (xb - prev);
                prev = xb;
            }
        }
        double mid = 0.5 * (prev + b);
        acc += inner_closed_form(fractional(c * mid + d)) * (b - prev);
        return acc;
    };

    const std::size_t n_chunks = plan_chunks(steps);
    std::vector<double> partial(n_chunks, 0.0);
    run_chunks(n_chunks, [&](std::size_t ch) {
        auto [lo, hi] = chunk_range(steps, n_chunks, ch);
        Compensated acc;
        for (u64 i = lo; i < hi; ++i) acc.add(cell_value(i));
        partial[ch] = acc.sum;
    });
    Compensated tot;
    for (double v : partial) tot.add(v);
    return tot.sum;
}

} // namespace

double integral_line_distance(const LineSpec& line, u64 steps) {
    if (steps < 10) throw std::domain_error("quadrature needs at least 10 steps");
    if (line.c == 0.0) throw std::domain_error("the limit integral needs a nonzero slope");
    // One full period [0, 1/|C|] scaled back by |C|.
    double period = 1.0 / std::abs(line.c);
    return std::abs(line.c) * midpoint_with_splits(line.c, line.d, 0.0, period, steps);
}

double integral_line_distance_unit(double c, double d, u64 steps) {
    if (steps < 10) throw std::domain_error("quadrature needs at least 10 steps");
    return midpoint_with_splits(c, d, 0.0, 1.0, steps);
}

double integral_line_distance_unit_exact(double c, double d) {
    if (c == 0.0) return inner_closed_form(fractional(d));
    return (sawtooth_antiderivative(c + d) - sawtooth_antiderivative(d)) / c;
}

double integral_line_distance_exact(const LineSpec& line) {
    // One full period in u = Cx + D, whichever the sign of C.
    return sawtooth_antiderivative(line.d + 1.0) - sawtooth_antiderivative(line.d);
}

} // namespace fq
