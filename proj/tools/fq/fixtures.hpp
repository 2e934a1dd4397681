#pragma once

#include "fq/pattern.hpp"

#include <string>
#include <vector>

namespace fqcli {

struct MatrixFixture {
    fq::u32 p = 0;
    std::vector<fq::u32> binv;               // indexed 0..p-2 for b = 1..p-1
    std::vector<std::vector<fq::u32>> rows;  // rows a = 0..p-1
};

struct PatternRow {
    fq::u32 p = 0;
    fq::Permutation sigma;
    std::vector<std::pair<fq::i32, fq::i32>> vectors;
    fq::u64 region = 0;
    fq::u64 count = 0;
    std::string ratio; // as printed, three decimals
};

MatrixFixture load_matrix_fixture(const std::string& path);
std::vector<PatternRow> load_pattern_fixture(const std::string& path);

/// Resolves fixtures/<name> under the configured fixture directory.
std::string fixture_path(const std::string& dir, const std::string& table_id);

} // namespace fqcli
