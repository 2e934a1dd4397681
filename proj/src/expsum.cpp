#include "fq/expsum.hpp"

#include "fq/parallel.hpp"

#include <cmath>
#include <numbers>

namespace fq {

namespace {

// Phase counts modulo p, merged across chunks by integer addition and
// evaluated in one fixed k-order pass.
struct PhaseHistogram {
    u32 p;
    std::vector<u64> counts;

    explicit PhaseHistogram(u32 p_) : p(p_), counts(p_, 0) {}

    void merge(const PhaseHistogram& other) {
        for (u32 k = 0; k < p; ++k) counts[k] += other.counts[k];
    }

    u64 total() const {
        u64 t = 0;
        for (u64 c : counts) t += c;
        return t;
    }

    std::complex<double> evaluate() const {
        const double w = 2.0 * std::numbers::pi / (double)p;
        double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
        for (u32 k = 0; k < p; ++k) {
            if (counts[k] == 0) continue;
            double c = (double)counts[k];
            double xr = c * std::cos(w * k) - cre;
            double tr = re + xr;
            cre = (tr - re) - xr;
            re = tr;
            double xi = c * std::sin(w * k) - cim;
            double ti = im + xi;
            cim = (ti - im) - xi;
            im = ti;
        }
        return {re, im};
    }
};

u32 reduce_mod(i64 v, u32 p) {
    i64 r = v % (i64)p;
    return (u32)(r < 0 ? r + p : r);
}

// Per-column decomposition of the phase: for column b the term at row a
// has phase outer(b) - a * step(b) (mod p), where
//   outer(b) = sum_j h_j (q_p(B_j) - s_j B_j^{-1}),
//   step(b)  = sum_j h_j B_j^{-1},  B_j = (b + t_j) mod p.
struct ColumnPhase {
    bool skipped; // some B_j = 0
    u32 outer;
    u32 step;
};

ColumnPhase column_phase(const FermatQuotientTable& table, const DisplacementPattern& pattern,
                         const std::vector<u32>& h_mod, const std::vector<u32>& s_mod, i64 b) {
    const u32 p = table.p();
    u64 outer = 0, step = 0;
    for (u32 j = 0; j < pattern.size(); ++j) {
        u32 bj = reduce_mod(b + pattern.vectors[j].second, p);
        if (bj == 0) return {true, 0, 0};
        u64 inv = table.inverse(bj);
        u64 q = table.base(bj);
        u64 shift = s_mod[j] * inv % p;
        u64 local = (q + p - shift) % p;
        outer = (outer + (u64)h_mod[j] * local) % p;
        step = (step + (u64)h_mod[j] * inv) % p;
    }
    return {false, (u32)outer, (u32)step};
}

bool np_bound_applicable(const DisplacementPattern& pattern, const std::vector<i64>& h, u32 p) {
    const u32 n = pattern.size();
    for (u32 j = 0; j < n; ++j) {
        if (h[j] % (i64)p == 0) continue;
        u32 tj = reduce_mod(pattern.vectors[j].second, p);
        bool unique = true;
        for (u32 k = 0; k < n && unique; ++k)
            if (k != j && reduce_mod(pattern.vectors[k].second, p) == tj) unique = false;
        if (unique) return true;
    }
    return false;
}

std::vector<u32> residues_of(const std::vector<i64>& v, u32 p) {
    std::vector<u32> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = reduce_mod(v[i], p);
    return out;
}

std::vector<u32> residues_of_s(const DisplacementPattern& pattern, u32 p) {
    std::vector<u32> out(pattern.size());
    for (u32 j = 0; j < pattern.size(); ++j) out[j] = reduce_mod(pattern.vectors[j].first, p);
    return out;
}

void check_h(const DisplacementPattern& pattern, const std::vector<i64>& h) {
    if (h.size() != pattern.size())
        throw std::invalid_argument("frequency vector length must match the pattern size");
}

// Chunk plan capped so the per-chunk histograms stay within ~256 MB.
std::size_t hist_chunks(u32 p, u64 total) {
    std::size_t c = plan_chunks(total);
    std::size_t mem_cap = (std::size_t)(256e6 / (8.0 * p));
    if (mem_cap < 1) mem_cap = 1;
    return std::min(c, mem_cap);
}

ExpSumResult result_from(const PhaseHistogram& hist, double bound, bool applicable) {
    ExpSumResult r;
    r.value = hist.evaluate();
    r.norm = std::abs(r.value);
    r.bound = bound;
    r.bound_applicable = applicable;
    r.terms = hist.total();
    return r;
}

} // namespace

ExpSumResult complete_exp_sum(const FermatQuotientTable& table,
                              const DisplacementPattern& pattern, const std::vector<i64>& h) {
    check_h(pattern, h);
    const u32 p = table.p();
    const auto h_mod = residues_of(h, p);
    const auto s_mod = residues_of_s(pattern, p);

    const u64 cols = p - 1;
    const std::size_t n_chunks = hist_chunks(p, cols);
    std::vector<PhaseHistogram> partial(n_chunks, PhaseHistogram(p));
    std::vector<u64> uniform_cols(n_chunks, 0);

    run_chunks(n_chunks, [&](std::size_t ch) {
        auto [lo, hi] = chunk_range(cols, n_chunks, ch);
        auto& hist = partial[ch];
        for (u64 i = lo; i < hi; ++i) {
            i64 b = (i64)i + 1;
            auto col = column_phase(table, pattern, h_mod, s_mod, b);
            if (col.skipped) continue;
            if (col.step == 0)
                hist.counts[col.outer] += p;
            else
                // The a-sum walks every residue class exactly once.
                ++uniform_cols[ch];
        }
    });

    PhaseHistogram hist(p);
    for (auto& part : partial) hist.merge(part);
    u64 uniform = 0;
    for (u64 u : uniform_cols) uniform += u;
    for (u32 k = 0; k < p; ++k) hist.counts[k] += uniform;
    return result_from(hist, (double)pattern.size() * p, np_bound_applicable(pattern, h, p));
}

ExpSumResult complete_exp_sum_direct(const FermatQuotientTable& table,
                                     const DisplacementPattern& pattern,
                                     const std::vector<i64>& h) {
    check_h(pattern, h);
    const u32 p = table.p();
    const auto h_mod = residues_of(h, p);
    const u32 n = pattern.size();

    const u64 cols = p - 1;
    const std::size_t n_chunks = hist_chunks(p, cols * p);
    std::vector<PhaseHistogram> partial(n_chunks, PhaseHistogram(p));

    run_chunks(n_chunks, [&](std::size_t ch) {
        auto [lo, hi] = chunk_range(cols, n_chunks, ch);
        auto& hist = partial[ch];
        for (u64 i = lo; i < hi; ++i) {
            i64 b = (i64)i + 1;
            bool skip = false;
            for (u32 j = 0; j < n && !skip; ++j)
                skip = reduce_mod(b + pattern.vectors[j].second, p) == 0;
            if (skip) continue;
            for (u32 a = 0; a < p; ++a) {
                u64 phase = 0;
                for (u32 j = 0; j < n; ++j) {
                    u32 aj = reduce_mod((i64)a + pattern.vectors[j].first, p);
                    u32 bj = reduce_mod(b + pattern.vectors[j].second, p);
                    phase = (phase + (u64)h_mod[j] * table.entry(aj, bj)) % p;
                }
                hist.counts[phase] += 1;
            }
        }
    });

    PhaseHistogram hist(p);
    for (auto& part : partial) hist.merge(part);
    return result_from(hist, (double)pattern.size() * p, np_bound_applicable(pattern, h, p));
}

ExpSumResult pattern_exp_sum(const FermatQuotientTable& table,
                             const DisplacementPattern& pattern, const std::vector<i64>& h) {
    check_h(pattern, h);
    const u32 p = table.p();
    const auto h_mod = residues_of(h, p);
    const auto s_mod = residues_of_s(pattern, p);
    auto region = admissible_region(OddPrime::validate(p), pattern);

    const u64 cols = region.empty() ? 0 : (u64)(region.b_hi - region.b_lo + 1);
    const u64 rows = region.empty() ? 0 : (u64)(region.a_hi - region.a_lo + 1);
    const std::size_t n_chunks = cols ? hist_chunks(p, cols * rows) : 0;
    std::vector<PhaseHistogram> partial(n_chunks, PhaseHistogram(p));

    run_chunks(n_chunks, [&](std::size_t ch) {
        auto [lo, hi] = chunk_range(cols, n_chunks, ch);
        auto& hist = partial[ch];
        for (u64 i = lo; i < hi; ++i) {
            i64 b = region.b_lo + (i64)i;
            auto col = column_phase(table, pattern, h_mod, s_mod, b);
            // Inside the region no shifted column can vanish mod p.
            u32 ph = reduce_mod((i64)col.outer - (i64)(region.a_lo % p) * col.step, p);
            u32 dec = col.step;
            for (u64 r = 0; r < rows; ++r) {
                hist.counts[ph] += 1;
                ph = ph >= dec ? ph - dec : ph + p - dec;
            }
        }
    });

    PhaseHistogram hist(p);
    for (auto& part : partial) hist.merge(part);
    double bound = (double)pattern.size() * p + 4.0 * (double)pattern.max_norm * p;
    return result_from(hist, bound, np_bound_applicable(pattern, h, p));
}

ExpSumResult heath_brown_sum(const FermatQuotientTable& table, i64 m, u64 X, u64 Y) {
    const u32 p = table.p();
    const u32 m_mod = reduce_mod(m, p);
    if (m_mod == 0) throw std::domain_error("m must be relatively prime to p");
    const u64 pp = (u64)p * p;
    if (Y < 1 || X + Y > pp - 1)
        throw std::out_of_range("range (X, X+Y] must sit inside [1, p^2-1]");

    const std::size_t n_chunks = hist_chunks(p, Y);
    std::vector<PhaseHistogram> partial(n_chunks, PhaseHistogram(p));

    run_chunks(n_chunks, [&](std::size_t ch) {
        auto [lo, hi] = chunk_range(Y, n_chunks, ch);
        auto& hist = partial[ch];
        for (u64 i = lo; i < hi; ++i) {
            u64 n = X + 1 + i;
            u32 b = (u32)(n % p);
            if (b == 0) continue;
            u32 a = (u32)(n / p);
            u32 q = table.entry(a, b);
            hist.counts[(u32)((u64)m_mod * q % p)] += 1;
        }
    });

    PhaseHistogram hist(p);
    for (auto& part : partial) hist.merge(part);
    double bound = std::sqrt((double)Y) * std::pow((double)p, 0.375);
    return result_from(hist, bound, true);
}

} // namespace fq
