#include "commands.hpp"

#include "fq/parallel.hpp"
#include "fq/prime.hpp"

#include <CLI11.hpp>

#include <iostream>

#ifndef FQ_DEFAULT_FIXTURE_DIR
#define FQ_DEFAULT_FIXTURE_DIR "fixtures"
#endif

int main(int argc, char** argv) {
    CLI::App app{"Fermat quotient matrix statistics: tables, counts, sums, discrepancy"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    fqcli::GlobalOpts g;
    g.fixtures_dir = FQ_DEFAULT_FIXTURE_DIR;
    unsigned threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (0 = all cores; env FQ_THREADS overrides)");
    app.add_option("--fixtures", g.fixtures_dir, "directory with the reference table files");
    app.add_option("--seed", g.seed, "seed echoed into reports (sampled checks)");

    fq::i64 p = 0;
    double c = 0.0, d = 0.0;
    fq::u64 samples = 1000;
    std::string sigma, vectors, h_text, table_id, figure_id;
    bool force = false;
    fq::i64 hb_m = 0;
    fq::u64 hb_x = 0, hb_y = 0;
    fq::u32 et_k = 10, box_l = 0, lattice_h = 0;
    fq::u64 pmin = 3, pmax = 0;
    fq::u32 bmax = 100;

    auto* matrix = app.add_subcommand("matrix", "dump the full quotient matrix");
    matrix->add_option("--p", p)->required();
    matrix->add_flag("--force", force, "allow p > 10^4");
    matrix->add_option("--format", g.format)->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
    matrix->add_option("--out", g.out);

    auto* repro = app.add_subcommand("repro", "re-run a bundled reference table");
    repro->add_option("--table", table_id, "T1, A11, A12 or A2")->required();
    repro->add_option("--out", g.out, "also write a JSON report here");

    auto* pc = app.add_subcommand("pattern-count", "count spanned points in one order polyhedron");
    pc->add_option("--p", p)->required();
    pc->add_option("--sigma", sigma, "permutation, e.g. 2,3,1")->required();
    pc->add_option("--vectors", vectors, "displacements, e.g. \"10,6;1,6;2,6\"")->required();
    pc->add_option("--out", g.out);

    auto* ps = app.add_subcommand("perm-sweep", "count every permutation in one sweep");
    ps->add_option("--p", p)->required();
    ps->add_option("--vectors", vectors)->required();
    ps->add_option("--out", g.out);

    auto* lm = app.add_subcommand("line-mean", "mean distance from the quotient point to a line");
    lm->add_option("--p", p)->required();
    lm->add_option("--c", c)->required();
    lm->add_option("--d", d)->required();
    lm->add_option("--out", g.out);

    auto* es = app.add_subcommand("expsum", "exponential sums over the quotient matrix");
    es->set_help_flag("--help", "print help"); // frees -h for the frequency vector
    es->add_option("--p", p)->required();
    es->add_option("--vectors", vectors);
    es->add_option("--h", h_text, "frequency vector, e.g. 1,0,2");
    es->add_option("--hb-m", hb_m, "Heath-Brown mode: frequency m");
    es->add_option("--hb-x", hb_x, "Heath-Brown mode: range start X");
    es->add_option("--hb-y", hb_y, "Heath-Brown mode: range length Y");
    es->add_option("--out", g.out);

    auto* disc =
        app.add_subcommand("discrepancy", "discrepancy of the base row (and a spanned set)");
    disc->set_help_flag("--help", "print help");
    disc->add_option("--p", p)->required();
    disc->add_option("--k", et_k, "Erdos-Turan truncation")->default_val(10);
    disc->add_option("--vectors", vectors, "also analyze the spanned point set");
    disc->add_option("--l", box_l, "grid boxes per axis for the spanned set");
    disc->add_option("--h", lattice_h, "Koksma-Szusz lattice bound for the spanned set");
    disc->add_option("--out", g.out);

    auto* figs = app.add_subcommand("figures", "emit plot-ready CSV point sets");
    figs->add_option("--id", figure_id, "fig1, fig2-1..3, fig3-1..3, fig4-1..6")->required();
    figs->add_option("--out", g.out, "output directory")->required();
    figs->add_option("--c", c, "fig1 slope");
    figs->add_option("--d", d, "fig1 intercept");
    figs->add_option("--samples", samples)->default_val(1000);

    auto* zeros = app.add_subcommand("zeros", "scan primes for vanishing quotients q_p(b) = 0");
    zeros->add_option("--pmin", pmin)->default_val(3);
    zeros->add_option("--pmax", pmax)->required();
    zeros->add_option("--bmax", bmax)->default_val(100);
    zeros->add_option("--format", g.format)->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
    zeros->add_option("--out", g.out);

    CLI11_PARSE(app, argc, argv);
    fq::set_thread_count(threads);

    try {
        if (*matrix) return fqcli::cmd_matrix(p, force, g);
        if (*repro) return fqcli::cmd_repro(table_id, g);
        if (*pc) return fqcli::cmd_pattern_count(p, sigma, vectors, g);
        if (*ps) return fqcli::cmd_perm_sweep(p, vectors, g);
        if (*lm) return fqcli::cmd_line_mean(p, c, d, g);
        if (*es) {
            if (hb_y > 0) return fqcli::cmd_expsum_hb(p, hb_m, hb_x, hb_y, g);
            if (vectors.empty() || h_text.empty())
                throw std::invalid_argument("expsum needs --vectors and --h (or --hb-m/--hb-y)");
            return fqcli::cmd_expsum(p, vectors, h_text, g);
        }
        if (*disc) return fqcli::cmd_discrepancy(p, et_k, vectors, box_l, lattice_h, g);
        if (*figs) return fqcli::cmd_figures(figure_id, c, d, samples, g);
        if (*zeros) return fqcli::cmd_zeros(pmin, pmax, bmax, g);
    } catch (const std::exception& e) {
        std::cerr << "fq: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
