#include "fq/prime.hpp"

namespace fq {

u64 powmod(u64 base, u64 exp, u64 mod) {
    if (mod == 1) return 0;
    u64 r = 1;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, mod);
        base = mulmod(base, base, mod);
        exp >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
    a %= n;
    if (a == 0) return false;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true; // a witnesses compositeness
}

} // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This base set is a proven deterministic test for all n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (miller_rabin_witness(n, a, d, s)) return false;
    return true;
}

OddPrime OddPrime::validate(i64 n) {
    if (n < 2)
        throw PrimeError(PrimeErrorKind::out_of_range,
                         "not a valid modulus: " + std::to_string(n));
    if (n > max_value)
        throw PrimeError(PrimeErrorKind::too_large,
                         "modulus too large for exact arithmetic: " + std::to_string(n));
    if (n == 2)
        throw PrimeError(PrimeErrorKind::even_prime, "2 is prime but not odd");
    if (!is_prime_u64((u64)n))
        throw PrimeError(PrimeErrorKind::composite,
                         "composite modulus: " + std::to_string(n));
    return OddPrime((u32)n);
}

} // namespace fq
