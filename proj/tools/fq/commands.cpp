#include "commands.hpp"

#include "fixtures.hpp"
#include "io.hpp"

#include "fq/discrepancy.hpp"
#include "fq/expsum.hpp"
#include "fq/line.hpp"
#include "fq/parallel.hpp"
#include "fq/pattern.hpp"
#include "fq/table.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <fstream>
#include <memory>

namespace fqcli {

using fq::i32;
using fq::i64;
using fq::u32;
using fq::u64;
using nlohmann::json;

namespace {

class Stopwatch {
public:
    explicit Stopwatch(std::string label) : label_(std::move(label)), start_(clock::now()) {}
    ~Stopwatch() {
        auto ms = std::chrono::duration<double, std::milli>(clock::now() - start_).count();
        // stderr only: payloads stay byte-identical run to run
        std::cerr << "[fq] " << label_ << ": " << ms << " ms\n";
    }

private:
    using clock = std::chrono::steady_clock;
    std::string label_;
    clock::time_point start_;
};

void emit_text(const std::string& content, const GlobalOpts& g) {
    if (g.out.empty())
        std::cout << content;
    else
        write_file(g.out, content);
}

int emit_report(const std::string& command, json parameters, json results, bool pass,
                const GlobalOpts& g) {
    json report = {
        {"job", {{"command", command}, {"parameters", std::move(parameters)}, {"seed", g.seed}}},
        {"results", std::move(results)},
        {"pass", pass},
    };
    emit_text(report.dump(2) + "\n", g);
    return pass ? 0 : 1;
}

fq::OddPrime checked_prime(i64 p) { return fq::OddPrime::validate(p); }

json region_json(const fq::AdmissibleRegion& r) {
    return {{"a_lo", r.a_lo}, {"a_hi", r.a_hi}, {"b_lo", r.b_lo},
            {"b_hi", r.b_hi}, {"cardinality", r.cardinality}};
}

json expsum_json(const fq::ExpSumResult& s) {
    return {{"re", s.value.real()},
            {"im", s.value.imag()},
            {"norm", s.norm},
            {"bound", s.bound},
            {"bound_applicable", s.bound_applicable},
            {"terms", s.terms}};
}

json vectors_json(const fq::DisplacementPattern& pat) {
    json v = json::array();
    for (auto [s, t] : pat.vectors) v.push_back(json::array({s, t}));
    return v;
}

// Streamed row by row: at the size-guard limit the dump has 10^8 cells.
void csv_matrix(const fq::FermatQuotientTable& table, std::ostream& out) {
    const u32 p = table.p();
    out << "b";
    for (u32 b = 1; b < p; ++b) out << ',' << b;
    out << "\nbinv";
    for (u32 b = 1; b < p; ++b) out << ',' << table.inverse(b);
    out << '\n';
    std::string row;
    for (u32 a = 0; a < p; ++a) {
        row.clear();
        row += 'a';
        row += std::to_string(a);
        for (u32 b = 1; b < p; ++b) {
            row += ',';
            row += std::to_string(table.entry(a, b));
        }
        row += '\n';
        out << row;
    }
}

} // namespace

int cmd_matrix(i64 p_in, bool force, const GlobalOpts& g) {
    Stopwatch timer("matrix");
    auto p = checked_prime(p_in);
    if (p.value() > 10000 && !force)
        throw std::domain_error("full dump of p > 10^4 needs --force (p*(p-1) cells)");
    fq::FermatQuotientTable table(p);

    if (g.format == "json") {
        json rows = json::array(), binv = json::array();
        for (u32 b = 1; b < p.value(); ++b) binv.push_back(table.inverse(b));
        for (u32 a = 0; a < p.value(); ++a) {
            json row = json::array();
            for (u32 b = 1; b < p.value(); ++b) row.push_back(table.entry(a, b));
            rows.push_back(std::move(row));
        }
        return emit_report("matrix", {{"p", p.value()}},
                           {{"p", p.value()}, {"binv", binv}, {"rows", rows}}, true, g);
    }
    if (g.out.empty()) {
        csv_matrix(table, std::cout);
    } else {
        std::ofstream out(g.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + g.out);
        csv_matrix(table, out);
    }
    return 0;
}

namespace {

int repro_t1(const std::string& path, const GlobalOpts& g) {
    auto fix = load_matrix_fixture(path);
    auto p = checked_prime(fix.p);
    fq::FermatQuotientTable table(p);

    std::string text;
    json diffs = json::array();
    u64 checked = 0, bad = 0;
    for (u32 b = 1; b < fix.p; ++b) {
        ++checked;
        if (table.inverse(b) != fix.binv[b - 1]) {
            ++bad;
            diffs.push_back({{"row", "binv"}, {"b", b}, {"got", table.inverse(b)},
                             {"want", fix.binv[b - 1]}});
        }
    }
    for (u32 a = 0; a < fix.p; ++a)
        for (u32 b = 1; b < fix.p; ++b) {
            ++checked;
            if (table.entry(a, b) != fix.rows[a][b - 1]) {
                ++bad;
                diffs.push_back({{"a", a}, {"b", b}, {"got", table.entry(a, b)},
                                 {"want", fix.rows[a][b - 1]}});
            }
        }

    text += "repro T1: p=" + std::to_string(fix.p) + ", " + std::to_string(checked) +
            " cells checked, " + std::to_string(bad) + " mismatches\n";
    for (const auto& d : diffs) text += "  diff " + d.dump() + "\n";
    text += bad == 0 ? "T1: PASS\n" : "T1: FAIL\n";
    std::cout << text;

    if (!g.out.empty())
        return emit_report("repro", {{"table", "T1"}},
                           {{"p", fix.p}, {"cells", checked}, {"diffs", diffs}}, bad == 0, g);
    return bad == 0 ? 0 : 1;
}

int repro_pattern_table(const std::string& table_id, const std::string& path,
                        const GlobalOpts& g) {
    auto rows = load_pattern_fixture(path);
    std::string text = "repro " + table_id + ": " + std::to_string(rows.size()) + " rows\n";
    json results = json::array();
    bool all_ok = true;

    u32 cached_p = 0;
    std::unique_ptr<fq::FermatQuotientTable> table;
    int idx = 0;
    for (const auto& row : rows) {
        ++idx;
        if (!table || cached_p != row.p) {
            table = std::make_unique<fq::FermatQuotientTable>(checked_prime(row.p));
            cached_p = row.p;
        }
        auto pattern = fq::DisplacementPattern::make(row.vectors);
        auto rep = fq::count_pattern(*table, pattern, row.sigma);
        std::string got_ratio = format_ratio3(rep.ratio);
        bool ok = rep.region_card == row.region && rep.count == row.count &&
                  got_ratio == row.ratio;
        all_ok &= ok;
        text += "  row " + std::to_string(idx) + ": region " +
                std::to_string(rep.region_card) + "/" + std::to_string(row.region) + " count " +
                std::to_string(rep.count) + "/" + std::to_string(row.count) + " ratio " +
                got_ratio + "/" + row.ratio + (ok ? " match" : " MISMATCH") + "\n";
        results.push_back({{"row", idx},
                           {"region", rep.region_card},
                           {"region_expected", row.region},
                           {"count", rep.count},
                           {"count_expected", row.count},
                           {"ratio", got_ratio},
                           {"ratio_expected", row.ratio},
                           {"match", ok}});
    }
    text += table_id + (all_ok ? ": PASS\n" : ": FAIL\n");
    std::cout << text;

    if (!g.out.empty())
        return emit_report("repro", {{"table", table_id}}, results, all_ok, g);
    return all_ok ? 0 : 1;
}

} // namespace

int cmd_repro(const std::string& table, const GlobalOpts& g) {
    Stopwatch timer("repro " + table);
    if (table == "T1" || table == "t1") return repro_t1(fixture_path(g.fixtures_dir, "t1"), g);
    if (table == "A11" || table == "a11")
        return repro_pattern_table("A11", fixture_path(g.fixtures_dir, "a11"), g);
    if (table == "A12" || table == "a12")
        return repro_pattern_table("A12", fixture_path(g.fixtures_dir, "a12"), g);
    if (table == "A2" || table == "a2")
        return repro_pattern_table("A2", fixture_path(g.fixtures_dir, "a2"), g);
    throw std::invalid_argument("unknown table id (expected T1, A11, A12 or A2): " + table);
}

int cmd_pattern_count(i64 p_in, const std::string& sigma_text, const std::string& vectors_text,
                      const GlobalOpts& g) {
    Stopwatch timer("pattern-count");
    auto p = checked_prime(p_in);
    auto pattern = fq::DisplacementPattern::make(parse_vectors(vectors_text));
    fq::Permutation sigma;
    for (auto v : parse_int_list(sigma_text)) sigma.push_back((u32)v);

    fq::FermatQuotientTable table(p);
    auto rep = fq::count_pattern(table, pattern, sigma);
    if (!pattern.distinct_t)
        std::cerr << "[fq] warning: second components not pairwise distinct; "
                     "equidistribution is not guaranteed in this regime\n";

    json results = {{"p", rep.p},
                    {"sigma", sigma},
                    {"vectors", vectors_json(pattern)},
                    {"distinct_t", pattern.distinct_t},
                    {"region", region_json(fq::admissible_region(p, pattern))},
                    {"count", rep.count},
                    {"tie_count", rep.tie_count},
                    {"main_term", rep.main_term},
                    {"ratio", rep.ratio}};
    return emit_report("pattern-count", {{"p", rep.p}, {"sigma", sigma_text},
                                         {"vectors", vectors_text}},
                       results, true, g);
}

int cmd_perm_sweep(i64 p_in, const std::string& vectors_text, const GlobalOpts& g) {
    Stopwatch timer("perm-sweep");
    auto p = checked_prime(p_in);
    auto pattern = fq::DisplacementPattern::make(parse_vectors(vectors_text));
    fq::FermatQuotientTable table(p);
    auto reports = fq::count_all_permutations(table, pattern);

    u64 total = reports.empty() ? 0 : reports.front().tie_count;
    json sweeps = json::array();
    for (const auto& rep : reports) {
        total += rep.count;
        sweeps.push_back({{"sigma", rep.sigma}, {"count", rep.count}, {"ratio", rep.ratio}});
    }
    const auto& first = reports.front();
    json results = {{"p", first.p},
                    {"vectors", vectors_json(pattern)},
                    {"distinct_t", pattern.distinct_t},
                    {"region_card", first.region_card},
                    {"tie_count", first.tie_count},
                    {"main_term", first.main_term},
                    {"permutations", sweeps},
                    {"partition_ok", total == first.region_card}};
    return emit_report("perm-sweep", {{"p", first.p}, {"vectors", vectors_text}}, results,
                       total == first.region_card, g);
}

int cmd_line_mean(i64 p_in, double c, double d, const GlobalOpts& g) {
    Stopwatch timer("line-mean");
    auto p = checked_prime(p_in);
    auto line = fq::LineSpec::make(c, d);
    fq::FermatQuotientTable table(p);
    auto res = fq::mean_line_distance(table, line);

    json results = {{"p", res.p},
                    {"c", c},
                    {"d", d},
                    {"mean", res.mean},
                    {"deviation", res.deviation},
                    {"error_scale", res.error_scale},
                    {"exact_path", res.exact_path},
                    {"in_slope_regime", line.in_slope_regime(p)}};
    if (res.exact_path) {
        results["exact_numerator"] = res.exact_numerator;
        results["exact_denominator"] = (u64)res.p * res.p;
    }
    return emit_report("line-mean", {{"p", res.p}, {"c", c}, {"d", d}}, results, true, g);
}

int cmd_expsum(i64 p_in, const std::string& vectors_text, const std::string& h_text,
               const GlobalOpts& g) {
    Stopwatch timer("expsum");
    auto p = checked_prime(p_in);
    auto pattern = fq::DisplacementPattern::make(parse_vectors(vectors_text));
    auto h = parse_int_list(h_text);
    fq::FermatQuotientTable table(p);

    auto s0 = fq::complete_exp_sum(table, pattern, h);
    auto s = fq::pattern_exp_sum(table, pattern, h);
    double diff = std::abs(s.value - s0.value);
    double diff_cap = 4.0 * pattern.max_norm * p.value();

    json results = {{"p", p.value()},
                    {"vectors", vectors_json(pattern)},
                    {"h", h},
                    {"complete", expsum_json(s0)},
                    {"restricted", expsum_json(s)},
                    {"difference_norm", diff},
                    {"difference_cap", diff_cap}};
    return emit_report("expsum", {{"p", p.value()}, {"vectors", vectors_text}, {"h", h_text}},
                       results, true, g);
}

int cmd_expsum_hb(i64 p_in, i64 m, u64 X, u64 Y, const GlobalOpts& g) {
    Stopwatch timer("expsum --heath-brown");
    auto p = checked_prime(p_in);
    fq::FermatQuotientTable table(p);
    auto s = fq::heath_brown_sum(table, m, X, Y);
    json results = {{"p", p.value()}, {"m", m}, {"x", X}, {"y", Y}, {"sum", expsum_json(s)},
                    {"norm_over_bound", s.norm / s.bound}};
    return emit_report("expsum", {{"p", p.value()}, {"m", m}, {"x", X}, {"y", Y}}, results,
                       true, g);
}

int cmd_discrepancy(i64 p_in, u32 k, const std::string& vectors_text, u32 box_l, u32 lattice_h,
                    const GlobalOpts& g) {
    Stopwatch timer("discrepancy");
    auto p = checked_prime(p_in);
    fq::FermatQuotientTable table(p);

    std::vector<double> row;
    row.reserve(p.value() - 1);
    for (u32 b = 1; b < p.value(); ++b) row.push_back(table.base(b) / (double)p.value());

    double disc = fq::uniform_discrepancy(row);
    double star = fq::star_discrepancy(row);
    double et = fq::erdos_turan_bound(row, k);
    bool inequality_ok = disc * (double)row.size() <= et + 1e-9;

    json results = {{"p", p.value()},
                    {"sequence", "base-row q_p(b)/p"},
                    {"n", row.size()},
                    {"uniform_discrepancy", disc},
                    {"star_discrepancy", star},
                    {"erdos_turan_k", k},
                    {"erdos_turan_bound", et},
                    {"unnormalized_inequality_ok", inequality_ok}};

    if (!vectors_text.empty()) {
        auto pattern = fq::DisplacementPattern::make(parse_vectors(vectors_text));
        auto region = fq::admissible_region(p, pattern);
        std::vector<std::vector<double>> points;
        points.reserve(region.cardinality);
        for (i64 a = region.a_lo; a <= region.a_hi; ++a)
            for (i64 b = region.b_lo; b <= region.b_hi; ++b) {
                auto pt = fq::span_point(table, fq::MatrixIndex{(u32)a, (u32)b}, pattern);
                points.push_back(pt.coords());
            }
        json nd = {{"vectors", vectors_json(pattern)}, {"points", points.size()}};
        if (box_l >= 2) {
            nd["box_l"] = box_l;
            nd["box_count_discrepancy"] = fq::box_count_discrepancy(points, box_l);
        }
        if (lattice_h >= 2) {
            nd["koksma_h"] = lattice_h;
            nd["koksma_szusz_bound"] = fq::koksma_szusz_bound(points, lattice_h);
            nd["sum_inverse_r"] = fq::sum_inverse_r(pattern.size(), lattice_h);
        }
        results["spanned"] = nd;
    }
    return emit_report("discrepancy", {{"p", p.value()}, {"k", k}}, results, inequality_ok, g);
}

namespace {

std::string figure_csv_line(double c, double d, u64 samples) {
    auto line = fq::LineSpec::make(c, d);
    std::string out = "x,y\n";
    for (u64 i = 0; i < samples; ++i) {
        double x = (double)i / (double)samples;
        out += format_double(x) + "," + format_double(fq::line_value(line, x)) + "\n";
    }
    return out;
}

// fig2-k / fig3-k: the (a,b) origin scatter; fig4-k: the spanned coordinates.
std::string figure_csv_pattern(const PatternRow& row, bool coords) {
    auto table = fq::FermatQuotientTable(fq::OddPrime::validate(row.p));
    auto pattern = fq::DisplacementPattern::make(row.vectors);
    auto sets = fq::emit_point_sets(table, pattern, row.sigma);

    std::string out;
    if (coords) {
        for (u32 j = 1; j <= pattern.size(); ++j)
            out += (j > 1 ? ",x" : "x") + std::to_string(j);
        out += "\n";
        for (const auto& res : sets.residues) {
            for (u32 j = 0; j < res.size(); ++j)
                out += (j ? "," : "") + format_coord(res[j] / (double)row.p);
            out += "\n";
        }
    } else {
        out += "a,b\n";
        for (const auto& origin : sets.origins)
            out += std::to_string(origin.a) + "," + std::to_string(origin.b) + "\n";
    }
    return out;
}

} // namespace

int cmd_figures(const std::string& id, double c, double d, u64 samples, const GlobalOpts& g) {
    Stopwatch timer("figures " + id);
    if (g.out.empty()) throw std::invalid_argument("figures needs --out <dir>");
    std::filesystem::create_directories(g.out);
    const std::string path = g.out + "/" + id + ".csv";

    if (id == "fig1") {
        if (c == 0.0)
            throw std::invalid_argument(
                "fig1 has no published line parameters; pass --c and --d");
        write_file(path, figure_csv_line(c, d, samples));
        std::cout << path << "\n";
        return 0;
    }

    auto dash = id.find('-');
    if (dash != std::string::npos && dash > 3) {
        std::string base = id.substr(0, dash);
        std::size_t k = std::stoul(id.substr(dash + 1));
        std::string table_id;
        bool coords = false;
        if (base == "fig2") table_id = "a11";
        else if (base == "fig3") table_id = "a12";
        else if (base == "fig4") table_id = "a2", coords = true;
        if (!table_id.empty()) {
            auto rows = load_pattern_fixture(fixture_path(g.fixtures_dir, table_id));
            if (k < 1 || k > rows.size())
                throw std::invalid_argument("figure instance out of range: " + id);
            write_file(path, figure_csv_pattern(rows[k - 1], coords));
            std::cout << path << "\n";
            return 0;
        }
    }
    throw std::invalid_argument("unknown figure id: " + id);
}

int cmd_zeros(u64 pmin, u64 pmax, u32 bmax, const GlobalOpts& g) {
    Stopwatch timer("zeros");
    if (pmin < 3) pmin = 3;
    if (pmax < pmin) throw std::invalid_argument("empty prime range");
    if (pmax > (u64)fq::OddPrime::max_value)
        throw std::invalid_argument("prime range capped at 2^31 - 1 (p^2 must stay exact)");
    if (bmax < 2) throw std::invalid_argument("base bound must be at least 2");

    // Collect the primes first; the scan is bounded to 10^6 of them.
    std::vector<u64> primes;
    for (u64 n = pmin | 1; n <= pmax; n += 2) {
        if (!fq::is_prime_u64(n)) continue;
        primes.push_back(n);
        if (primes.size() > 1000000)
            throw std::domain_error("zero scan capped at 10^6 primes");
    }

    struct ZeroRecord {
        u64 p;
        std::vector<u32> zeros;
        bool wieferich;
    };
    const std::size_t n_chunks = fq::plan_chunks(primes.size());
    std::vector<std::vector<ZeroRecord>> partial(n_chunks);
    fq::run_chunks(n_chunks, [&](std::size_t ch) {
        auto [lo, hi] = fq::chunk_range(primes.size(), n_chunks, ch);
        for (std::size_t i = lo; i < hi; ++i) {
            u64 p = primes[i];
            u64 pp = p * p;
            ZeroRecord rec{p, {}, false};
            u64 top = std::min<u64>(bmax, p - 1);
            for (u64 b = 2; b <= top; ++b) {
                if (fq::powmod(b, p - 1, pp) == 1) { // q_p(b) = 0
                    rec.zeros.push_back((u32)b);
                    if (b == 2) rec.wieferich = true;
                }
            }
            if (!rec.zeros.empty()) partial[ch].push_back(std::move(rec));
        }
    });

    std::vector<ZeroRecord> records;
    for (auto& part : partial)
        for (auto& rec : part) records.push_back(std::move(rec));

    if (g.format == "json") {
        json arr = json::array();
        for (const auto& rec : records)
            arr.push_back({{"p", rec.p}, {"zeros", rec.zeros}, {"wieferich", rec.wieferich}});
        return emit_report("zeros", {{"pmin", pmin}, {"pmax", pmax}, {"bmax", bmax}}, arr, true,
                           g);
    }
    std::string out = "p,b,wieferich\n";
    for (const auto& rec : records)
        for (u32 b : rec.zeros)
            out += std::to_string(rec.p) + "," + std::to_string(b) + "," +
                   (b == 2 ? "1" : "0") + "\n";
    emit_text(out, g);
    return 0;
}

} // namespace fqcli
