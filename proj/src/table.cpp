#include "fq/table.hpp"

namespace fq {

MatrixIndex MatrixIndex::checked(i64 a, i64 b, OddPrime p) {
    if (a < 0 || a > (i64)p.value() - 1)
        throw std::out_of_range("row index out of [0, p-1]: " + std::to_string(a));
    if (b < 1 || b > (i64)p.value() - 1)
        throw std::out_of_range("column index out of [1, p-1]: " + std::to_string(b));
    return MatrixIndex{(u32)a, (u32)b};
}

u32 fermat_quotient_oracle(u64 n, OddPrime p) {
    const u64 pp = p.squared();
    if (n < 1 || n > pp - 1)
        throw std::out_of_range("oracle argument out of [1, p^2-1]: " + std::to_string(n));
    if (n % p.value() == 0)
        throw std::domain_error("fermat quotient undefined for multiples of p");
    u64 r = powmod(n, p.value() - 1, pp); // r = n^(p-1) mod p^2, r = 1 (mod p)
    return (u32)((r - 1) / p.value());
}

ProductIdentityReadings product_identity_readings(const FermatQuotientTable& table, u32 a,
                                                  u32 b1, u32 b2) {
    const u32 p = table.p();
    if (a >= p) throw std::out_of_range("row index out of [0, p-1]");
    const u64 prod = (u64)b1 * b2; // b1, b2 < p keeps the product below p^2
    const u32 prod_res = (u32)(prod % p);
    if (prod_res == 0) throw std::domain_error("product divisible by p");
    auto op = OddPrime::validate(p);
    const u64 inv12 = table.inverse(prod_res);

    ProductIdentityReadings r;
    r.additive_lhs = (u32)((fermat_quotient_oracle(prod, op) + (p - a * inv12 % p)) % p);
    u64 t1 = table.entry(a, b1);
    u64 t2 = table.entry(a, b2);
    u64 cross = (u64)a * ((b1 + (u64)b2 - 1) % p) % p * table.inverse(b1) % p *
                table.inverse(b2) % p;
    r.additive_rhs = (u32)((t1 + t2 + cross) % p);
    r.reduced_lhs = table.entry(a, prod_res);
    r.correction = (u32)(prod / p % p * inv12 % p);
    return r;
}

FermatQuotientTable::FermatQuotientTable(OddPrime p)
    : p_(p.value()), base_(p.value(), 0), inv_(p.value(), 0) {
    const u32 pv = p_;

    // Inverses by the linear recurrence inv[b] = -(p/b) * inv[p mod b].
    inv_[1] = 1;
    for (u32 b = 2; b < pv; ++b)
        inv_[b] = (u32)(pv - (u64)(pv / b) * inv_[pv % b] % pv);

    if (pv == 3) {
        base_[1] = 0;
        base_[2] = fermat_quotient_oracle(2, p);
        return;
    }

    // Smallest-prime-factor sieve: one oracle exponentiation per prime b,
    // and q_p(uv) = q_p(u) + q_p(v) (mod p) for composite b = u*v < p
    // (the integer product needs no reduction, so the logarithm law applies).
    std::vector<u32> spf(pv, 0);
    for (u32 i = 2; i < pv; ++i) {
        if (spf[i] == 0)
            for (u64 j = i; j < pv; j += i)
                if (spf[j] == 0) spf[j] = i;
    }

    base_[1] = 0;
    for (u32 b = 2; b < pv; ++b) {
        u32 u = spf[b];
        if (u == b) {
            base_[b] = fermat_quotient_oracle(b, p);
        } else {
            u32 s = base_[u] + base_[b / u];
            base_[b] = s >= pv ? s - pv : s;
        }
    }
}

} // namespace fq
