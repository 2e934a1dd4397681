#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fq {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i32 = std::int32_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

u64 powmod(u64 base, u64 exp, u64 mod);

/// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(u64 n);

/// Why validate_prime rejected its input.
enum class PrimeErrorKind {
    out_of_range,   // n < 2 (negatives, 0, 1)
    even_prime,     // n == 2: prime but not odd
    composite,      // n >= 3 and not prime
    too_large,      // n >= 2^31: p^2 would not fit exact 64-bit arithmetic
};

struct PrimeError : std::invalid_argument {
    PrimeErrorKind kind;
    PrimeError(PrimeErrorKind k, const std::string& msg)
        : std::invalid_argument(msg), kind(k) {}
};

// An odd prime p with 3 <= p < 2^31, so that p^2 < 2^62 and all mod-p^2
// arithmetic stays exact in 64/128-bit integers.
class OddPrime {
public:
    static constexpr i64 max_value = (i64{1} << 31) - 1;

    static OddPrime validate(i64 n);

    u32 value() const { return p_; }
    u64 squared() const { return (u64)p_ * p_; }

    friend bool operator==(OddPrime a, OddPrime b) { return a.p_ == b.p_; }

private:
    explicit OddPrime(u32 p) : p_(p) {}
    u32 p_;
};

inline OddPrime validate_prime(i64 n) { return OddPrime::validate(n); }

} // namespace fq
