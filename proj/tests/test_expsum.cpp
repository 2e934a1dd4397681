#include "fq/expsum.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace fq;

namespace {

DisplacementPattern pat(std::vector<std::pair<i32, i32>> v) {
    return DisplacementPattern::make(std::move(v));
}

} // namespace

TEST_CASE("zero frequency gives the term count") {
    FermatQuotientTable t(OddPrime::validate(11));
    auto s = complete_exp_sum(t, pat({{0, 0}}), {0});
    CHECK(s.terms == 110);
    CHECK(s.value.real() == doctest::Approx(110.0).epsilon(1e-12));
    CHECK(s.value.imag() == doctest::Approx(0.0).epsilon(1e-12));

    auto r = pattern_exp_sum(t, pat({{1, 2}, {0, 3}}), {0, 0});
    CHECK(r.terms == r.value.real()); // region cardinality
}

TEST_CASE("single-cell pattern collapses to a vanishing geometric sum") {
    FermatQuotientTable t(OddPrime::validate(11));
    auto s = complete_exp_sum(t, pat({{0, 0}}), {1});
    CHECK(s.norm <= 1e-9);
    CHECK(s.terms == 110);
    CHECK(s.bound_applicable);
    CHECK(s.bound == doctest::Approx(11.0));
}

TEST_CASE("direct and collapsed routes agree bit for bit") {
    std::mt19937_64 rng(13);
    for (u32 pv : {11u, 101u}) {
        FermatQuotientTable t(OddPrime::validate(pv));
        for (int trial = 0; trial < 8; ++trial) {
            u32 n = 1 + (u32)fqtest::rand_below(rng, 3);
            std::vector<std::pair<i32, i32>> vecs;
            std::vector<i64> h;
            for (u32 j = 0; j < n; ++j) {
                vecs.push_back({(i32)fqtest::rand_below(rng, 11) - 5,
                                (i32)fqtest::rand_below(rng, 11) - 5});
                h.push_back((i64)fqtest::rand_below(rng, 7) - 3);
            }
            auto a = complete_exp_sum(t, pat(vecs), h);
            auto b = complete_exp_sum_direct(t, pat(vecs), h);
            CHECK(a.value.real() == b.value.real());
            CHECK(a.value.imag() == b.value.imag());
            CHECK(a.terms == b.terms);
        }
    }
}

TEST_CASE("complete sum agrees with the exponentiation oracle") {
    std::mt19937_64 rng(19);
    FermatQuotientTable t(OddPrime::validate(31));
    auto p = OddPrime::validate(31);
    for (int trial = 0; trial < 4; ++trial) {
        u32 n = 1 + (u32)fqtest::rand_below(rng, 2);
        std::vector<std::pair<i32, i32>> vecs;
        std::vector<i64> h;
        for (u32 j = 0; j < n; ++j) {
            vecs.push_back({(i32)fqtest::rand_below(rng, 7) - 3,
                            (i32)fqtest::rand_below(rng, 7) - 3});
            h.push_back((i64)fqtest::rand_below(rng, 5) - 2);
        }
        auto fast = complete_exp_sum(t, pat(vecs), h);
        auto oracle = fqtest::complete_exp_sum_oracle(p, pat(vecs), h);
        CHECK(fast.value.real() == doctest::Approx(oracle.real()).epsilon(1e-6));
        CHECK(fast.value.imag() == doctest::Approx(oracle.imag()).epsilon(1e-6));
    }
}

TEST_CASE("full-grid pattern: restricted equals complete") {
    FermatQuotientTable t(OddPrime::validate(101));
    auto a = complete_exp_sum(t, pat({{0, 0}}), {1});
    auto b = pattern_exp_sum(t, pat({{0, 0}}), {1});
    CHECK(a.value.real() == b.value.real());
    CHECK(a.value.imag() == b.value.imag());
    CHECK(a.terms == b.terms);
}

TEST_CASE("boundary gap stays within 4Mp") {
    std::mt19937_64 rng(29);
    for (u32 pv : {11u, 101u}) {
        FermatQuotientTable t(OddPrime::validate(pv));
        for (int trial = 0; trial < 10; ++trial) {
            u32 n = 1 + (u32)fqtest::rand_below(rng, 3);
            std::vector<std::pair<i32, i32>> vecs;
            std::vector<i64> h;
            for (u32 j = 0; j < n; ++j) {
                vecs.push_back({(i32)fqtest::rand_below(rng, 13) - 6,
                                (i32)fqtest::rand_below(rng, 13) - 6});
                h.push_back((i64)fqtest::rand_below(rng, 7) - 3);
            }
            auto pattern = pat(vecs);
            auto s0 = complete_exp_sum(t, pattern, h);
            auto s = pattern_exp_sum(t, pattern, h);
            CHECK(std::abs(s.value - s0.value) <= 4.0 * pattern.max_norm * pv + 1e-9);
        }
    }
}

TEST_CASE("the Np cap holds whenever a frequency hits a unique shift") {
    FermatQuotientTable t(OddPrime::validate(101));
    auto pattern = pat({{0, 4}, {7, 5}, {3, 10}});
    for (i64 h1 = -3; h1 <= 3; ++h1)
        for (i64 h2 = -3; h2 <= 3; ++h2)
            for (i64 h3 = -3; h3 <= 3; ++h3) {
                if (h1 == 0 && h2 == 0 && h3 == 0) continue;
                auto s = complete_exp_sum(t, pattern, {h1, h2, h3});
                CHECK(s.bound_applicable);
                CHECK(s.norm <= 3.0 * 101 + 1e-9);
            }
}

TEST_CASE("bound applicability needs a nonzero frequency on a unique shift") {
    FermatQuotientTable t(OddPrime::validate(11));
    auto mixed = pat({{10, 6}, {1, 6}, {2, 7}}); // t=7 unique, t=6 repeated
    CHECK(complete_exp_sum(t, mixed, {0, 0, 1}).bound_applicable);
    CHECK_FALSE(complete_exp_sum(t, mixed, {1, 1, 0}).bound_applicable);
    auto equal = pat({{0, 6}, {1, 6}}); // no unique shift at all
    CHECK_FALSE(complete_exp_sum(t, equal, {1, 2}).bound_applicable);
}

TEST_CASE("heath-brown range sums") {
    FermatQuotientTable t(OddPrime::validate(101));
    CHECK_THROWS_AS(heath_brown_sum(t, 101, 0, 50), std::domain_error);
    CHECK_THROWS_AS(heath_brown_sum(t, 1, 0, (u64)101 * 101), std::out_of_range);

    auto s = heath_brown_sum(t, 1, 0, 100);
    CHECK(s.terms == 100);
    CHECK(s.norm <= (double)s.terms + 1e-12);
    CHECK(s.bound == doctest::Approx(std::sqrt(100.0) * std::pow(101.0, 0.375)));

    // over the whole admissible range the sum is the h=(m) complete sum of
    // the trivial pattern; identical histograms make them bit-equal
    auto whole = heath_brown_sum(t, 7, 0, (u64)101 * 101 - 1);
    auto complete = complete_exp_sum(t, pat({{0, 0}}), {7});
    CHECK(whole.terms == complete.terms);
    CHECK(whole.value.real() == complete.value.real());
    CHECK(whole.value.imag() == complete.value.imag());
}

TEST_CASE("frequency vector must match the pattern width") {
    FermatQuotientTable t(OddPrime::validate(11));
    CHECK_THROWS_AS(complete_exp_sum(t, pat({{0, 0}, {1, 1}}), {1}), std::invalid_argument);
}

TEST_CASE("Np cap, exhaustive over the small primes") {
    // t shifts {0,1,2} stay pairwise distinct mod p for every p >= 3
    auto pattern = pat({{1, 0}, {0, 1}, {2, 2}});
    for (u32 pv = 3; pv <= 101; pv += 2) {
        if (!is_prime_u64(pv)) continue;
        FermatQuotientTable t(OddPrime::validate(pv));
        for (i64 h1 = -3; h1 <= 3; ++h1)
            for (i64 h2 = -3; h2 <= 3; ++h2)
                for (i64 h3 = -3; h3 <= 3; ++h3) {
                    if (h1 == 0 && h2 == 0 && h3 == 0) continue;
                    if (h1 % pv == 0 && h2 % pv == 0 && h3 % pv == 0) continue;
                    auto s = complete_exp_sum(t, pattern, {h1, h2, h3});
                    CHECK(s.norm <= 3.0 * pv + 1e-9);
                }
    }
}

TEST_CASE("degenerate sums are empty, not undefined") {
    FermatQuotientTable t3(OddPrime::validate(3));
    // every column hits b + t = 0 (mod 3) for some t
    auto s = complete_exp_sum(t3, pat({{0, 1}, {0, 2}}), {1, 1});
    CHECK(s.terms == 0);
    CHECK(s.norm == 0.0);

    FermatQuotientTable t11(OddPrime::validate(11));
    auto r = pattern_exp_sum(t11, pat({{0, 12}}), {1}); // empty region
    CHECK(r.terms == 0);
    CHECK(r.norm == 0.0);
}

TEST_CASE("heath-brown ratio survey stays below unit constant") {
    // Empirical check of the range-sum cap: across a random sweep of
    // (p, m, X, Y) the observed max of norm / (Y^(1/2) p^(3/8)) was 0.30.
    std::mt19937_64 rng(97);
    double max_ratio = 0.0;
    for (u32 pv : {101u, 313u}) {
        FermatQuotientTable t(OddPrime::validate(pv));
        for (int i = 0; i < 50; ++i) {
            u64 pp = (u64)pv * pv;
            i64 m = 1 + (i64)fqtest::rand_below(rng, pv - 1);
            u64 Y = 1 + fqtest::rand_below(rng, pp / 2);
            u64 X = fqtest::rand_below(rng, pp - 1 - Y);
            auto s = heath_brown_sum(t, m, X, Y);
            max_ratio = std::max(max_ratio, s.norm / s.bound);
        }
    }
    CHECK(max_ratio > 0.0);
    CHECK(max_ratio < 1.0);
}
