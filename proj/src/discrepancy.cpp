#include "fq/discrepancy.hpp"

#include "fq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace fq {

namespace {

std::vector<double> sorted_checked(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("empty sequence");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("sequence values must lie in [0,1]");
    std::vector<double> x(values.begin(), values.end());
    std::sort(x.begin(), x.end());
    return x;
}

} // namespace

double uniform_discrepancy(std::span<const double> values) {
    const auto x = sorted_checked(values);
    const double n = (double)x.size();

    // Distinct values with counts of points < v and <= v.
    std::vector<double> v;
    std::vector<double> lt, le;
    for (std::size_t i = 0; i < x.size();) {
        std::size_t j = i;
        while (j < x.size() && x[j] == x[i]) ++j;
        v.push_back(x[i]);
        lt.push_back((double)i);
        le.push_back((double)j);
        i = j;
    }
    const std::size_t m = v.size();

    // Closed intervals [v_i, v_j]: excess of count over measure.
    // value = (le_j - n v_j) + (n v_i - lt_i), maximized over i <= j.
    double surplus = -std::numeric_limits<double>::infinity();
    double gmax = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
        gmax = std::max(gmax, n * v[j] - lt[j]);
        surplus = std::max(surplus, (le[j] - n * v[j]) + gmax);
    }

    // Open-limit intervals hugging the gaps (plus the closed 0/1 ends):
    // value = (n v_j - lt_j) + (le_i - n v_i), i strictly before j; the
    // virtual left end at 0 contributes 0.
    double deficit = 0.0;
    double wmax = 0.0; // covers alpha = 0 closed
    for (std::size_t j = 0; j < m; ++j) {
        deficit = std::max(deficit, (n * v[j] - lt[j]) + wmax);
        wmax = std::max(wmax, le[j] - n * v[j]);
    }
    deficit = std::max(deficit, wmax); // beta = 1 closed

    return std::max(surplus, deficit) / n;
}

double star_discrepancy(std::span<const double> values) {
    const auto x = sorted_checked(values);
    const double n = (double)x.size();
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        d = std::max(d, (double)(i + 1) / n - x[i]);
        d = std::max(d, x[i] - (double)i / n);
    }
    return d;
}

double erdos_turan_bound(std::span<const double> values, u32 K) {
    if (values.empty()) throw std::invalid_argument("empty sequence");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("sequence values must lie in [0,1]");
    if (K <= 1) throw std::domain_error("the bound needs K > 1");
    const double two_pi = 2.0 * std::numbers::pi;
    double total = (double)values.size() / (double)K;
    for (u32 m = 1; m <= K; ++m) {
        double re = 0.0, im = 0.0;
        for (double s : values) {
            re += std::cos(two_pi * m * s);
            im += std::sin(two_pi * m * s);
        }
        total += 3.0 / m * std::hypot(re, im);
    }
    return total;
}

u64 r_of_h(std::span<const i64> h) {
    u128 r = 1;
    for (i64 hi : h) {
        u64 mag = hi < 0 ? ~(u64)hi + 1 : (u64)hi;
        if (mag > 1) {
            r *= mag;
            if (r > (u128)UINT64_MAX) throw std::overflow_error("r(h) exceeds 64 bits");
        }
    }
    return (u64)r;
}

double sum_inverse_r(u32 N, u64 H) {
    if (N < 1) throw std::invalid_argument("dimension must be positive");
    if (H < 2) throw std::domain_error("the lattice sum needs H >= 2");
    double harmonic = 0.0;
    for (u64 k = 1; k <= H; ++k) harmonic += 1.0 / (double)k;
    double base = 1.0 + 2.0 * harmonic;
    double powv = 1.0;
    for (u32 i = 0; i < N; ++i) powv *= base;
    return powv - 1.0;
}

namespace {

void check_points(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw std::invalid_argument("empty point set");
    const std::size_t n = points.front().size();
    if (n == 0) throw std::invalid_argument("points must have positive dimension");
    for (const auto& pt : points)
        if (pt.size() != n) throw std::invalid_argument("points of mixed dimension");
}

} // namespace

double koksma_szusz_bound(const std::vector<std::vector<double>>& points, u32 H,
                          double c_n) {
    check_points(points);
    if (H <= 1) throw std::domain_error("the bound needs H > 1");
    const u32 n = (u32)points.front().size();
    const double R = (double)points.size();
    const double two_pi = 2.0 * std::numbers::pi;

    const u64 side = 2 * (u64)H + 1;
    u64 total = 1;
    for (u32 j = 0; j < n; ++j) {
        if (total > 100000000 / side)
            throw std::domain_error("frequency lattice too large ((2H+1)^N capped at 10^8)");
        total *= side;
    }

    const std::size_t n_chunks = plan_chunks(total);
    std::vector<double> partial(n_chunks, 0.0);
    run_chunks(n_chunks, [&](std::size_t ch) {
        auto [lo, hi] = chunk_range(total, n_chunks, ch);
        double acc = 0.0;
        std::vector<double> hvec(n);
        for (u64 idx = lo; idx < hi; ++idx) {
            u64 rem = idx;
            double r = 1.0;
            bool zero = true;
            for (u32 j = 0; j < n; ++j) {
                i64 hj = (i64)(rem % side) - (i64)H;
                rem /= side;
                hvec[j] = (double)hj;
                if (hj != 0) {
                    zero = false;
                    r *= std::abs((double)hj);
                }
            }
            if (zero) continue;
            double re = 0.0, im = 0.0;
            for (const auto& pt : points) {
                double phase = 0.0;
                for (u32 j = 0; j < n; ++j) phase += hvec[j] * pt[j];
                re += std::cos(two_pi * phase);
                im += std::sin(two_pi * phase);
            }
            acc += std::hypot(re, im) / (R * r);
        }
        partial[ch] = acc;
    });

    double bound = 2.0 / ((double)H + 1.0);
    for (double v : partial) bound += v;
    return c_n * bound;
}

double box_count_discrepancy(const std::vector<std::vector<double>>& points, u32 L) {
    check_points(points);
    if (L < 2) throw std::domain_error("the grid needs L >= 2");
    const u32 n = (u32)points.front().size();

    u64 cells = 1;
    for (u32 j = 0; j < n; ++j) {
        if (cells > 100000000 / L) throw std::domain_error("cell count capped at 10^8");
        cells *= L;
    }

    std::vector<u64> counts(cells, 0);
    for (const auto& pt : points) {
        u64 idx = 0;
        for (u32 j = 0; j < n; ++j) {
            auto cell = (i64)std::floor(pt[j] * (double)L);
            if (cell < 0) cell = 0;
            if (cell >= (i64)L) cell = (i64)L - 1;
            idx = idx * L + (u64)cell;
        }
        ++counts[idx];
    }

    const double R = (double)points.size();
    const double vol = 1.0 / (double)cells;
    double d = 0.0;
    for (u64 c : counts) d = std::max(d, std::abs((double)c / R - vol));
    return d;
}

namespace {

u64 binomial_checked(u64 n, u64 k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    u128 r = 1;
    for (u64 i = 1; i <= k; ++i) {
        if (r > ~(u128)0 / (n - k + i)) throw std::overflow_error("binomial overflow");
        r = r * (n - k + i) / i;
    }
    if (r > (u128)UINT64_MAX) throw std::overflow_error("binomial exceeds 64 bits");
    return (u64)r;
}

} // namespace

OrderedBoxCounts ordered_box_counts(u32 N, u32 L) {
    if (N < 1 || N > L) throw std::invalid_argument("need 1 <= N <= L");
    return {binomial_checked(L, N), binomial_checked((u64)L + N - 1, N)};
}

} // namespace fq
