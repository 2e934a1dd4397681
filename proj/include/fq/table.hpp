#pragma once

#include "fq/prime.hpp"

#include <span>
#include <vector>

namespace fq {

/// Position inside the p x (p-1) quotient matrix: row 0 <= a <= p-1,
/// column 1 <= b <= p-1.
struct MatrixIndex {
    u32 a;
    u32 b;

    static MatrixIndex checked(i64 a, i64 b, OddPrime p);
};

/// q_p(n) = ((n^(p-1) - 1) / p) mod p, computed by exponentiation mod p^2.
/// The division is exact by Fermat's little theorem. This is the reference
/// path every table-backed shortcut is tested against.
/// Requires 1 <= n <= p^2 - 1 and gcd(n, p) = 1.
u32 fermat_quotient_oracle(u64 n, OddPrime p);

// Per-prime O(p) state: the base row q_p(1..p-1) and the inverse table
// b^{-1} mod p. Any matrix entry follows in O(1) from
// A_{a,b} = q_p(b) - a*b^{-1} (mod p), so the p x (p-1) matrix is never
// materialized. Immutable after construction; safe to share across threads.
class FermatQuotientTable {
public:
    explicit FermatQuotientTable(OddPrime p);

    u32 p() const { return p_; }

    /// q_p(b) for 1 <= b <= p-1.
    u32 base(u32 b) const {
        check_column(b);
        return base_[b];
    }

    /// b^{-1} mod p for 1 <= b <= p-1.
    u32 inverse(u32 b) const {
        check_column(b);
        return inv_[b];
    }

    /// A_{a,b} = (q_p(b) - a*b^{-1}) mod p, in [0, p-1].
    /// The row index is reduced mod p, matching the matrix identities whose
    /// indices wrap; the column must already lie in [1, p-1].
    u32 entry(u32 a, u32 b) const {
        check_column(b);
        u32 t = (u32)((u64)(a % p_) * inv_[b] % p_);
        u32 v = base_[b] + p_ - t;
        return v >= p_ ? v - p_ : v;
    }

    u32 entry(MatrixIndex idx) const { return entry(idx.a, idx.b); }

    /// The unique row a with A_{a,b} = 0, namely a = b*q_p(b) mod p.
    u32 zero_row_of_column(u32 b) const {
        check_column(b);
        return (u32)((u64)b * base_[b] % p_);
    }

    /// Entries indexed 1..p-1 (slot 0 unused, kept 0).
    std::span<const u32> base_row() const { return {base_.data(), base_.size()}; }
    std::span<const u32> inverses() const { return {inv_.data(), inv_.size()}; }

private:
    void check_column(u32 b) const {
        if (b == 0 || b >= p_) throw std::out_of_range("column index out of [1, p-1]");
    }

    u32 p_;
    std::vector<u32> base_; // base_[b] = q_p(b), b in [1, p-1]
    std::vector<u32> inv_;  // inv_[b] = b^{-1} mod p
};

// The product identity for A_{a, b1 b2} comes in two readings. The additive
// one treats b1 b2 as an integer product (q_p of the product obeys the
// logarithm law) and is an identity. Reducing the column index mod p
// instead shifts the left side by floor(b1 b2 / p) * (b1 b2)^{-1}; that
// reading is exposed here so the gap is visible, but only the additive
// form is asserted.
struct ProductIdentityReadings {
    u32 additive_lhs;  // q_p(b1 b2) - a (b1 b2)^{-1}, integer product
    u32 additive_rhs;  // A_{a,b1} + A_{a,b2} + a (b1+b2-1) b1^{-1} b2^{-1}
    u32 reduced_lhs;   // A_{a, b1 b2 mod p}
    u32 correction;    // floor(b1 b2 / p) * (b1 b2)^{-1} mod p
};

ProductIdentityReadings product_identity_readings(const FermatQuotientTable& table, u32 a,
                                                  u32 b1, u32 b2);

} // namespace fq
