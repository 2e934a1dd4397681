#pragma once

#include "fq/prime.hpp"

#include <string>

namespace fqcli {

struct GlobalOpts {
    std::string fixtures_dir;
    std::string out;    // output file (or directory for figures); empty = stdout
    std::string format; // csv | json where applicable
    long seed = 0;
};

int cmd_matrix(fq::i64 p, bool force, const GlobalOpts& g);
int cmd_repro(const std::string& table, const GlobalOpts& g);
int cmd_pattern_count(fq::i64 p, const std::string& sigma, const std::string& vectors,
                      const GlobalOpts& g);
int cmd_perm_sweep(fq::i64 p, const std::string& vectors, const GlobalOpts& g);
int cmd_line_mean(fq::i64 p, double c, double d, const GlobalOpts& g);
int cmd_expsum(fq::i64 p, const std::string& vectors, const std::string& h, const GlobalOpts& g);
int cmd_expsum_hb(fq::i64 p, fq::i64 m, fq::u64 X, fq::u64 Y, const GlobalOpts& g);
int cmd_discrepancy(fq::i64 p, fq::u32 k, const std::string& vectors, fq::u32 box_l,
                    fq::u32 lattice_h, const GlobalOpts& g);
int cmd_figures(const std::string& id, double c, double d, fq::u64 samples, const GlobalOpts& g);
int cmd_zeros(fq::u64 pmin, fq::u64 pmax, fq::u32 bmax, const GlobalOpts& g);

} // namespace fqcli
