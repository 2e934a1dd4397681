#pragma once

#include "fq/prime.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace fqcli {

/// Shortest round-trip decimal; locale independent.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Fixed 17 significant digits, for the exact-rational k/p coordinates.
inline std::string format_coord(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// Ratio truncated (not rounded) to three decimals, the way the reference
/// tables print it.
inline std::string format_ratio3(double v) {
    double t = std::floor(v * 1000.0) / 1000.0;
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(3);
    os << t;
    return os.str();
}

/// "10,6;1,6;2,6" -> displacement vector list.
std::vector<std::pair<fq::i32, fq::i32>> parse_vectors(const std::string& text);

/// "2,3,1" -> integer list.
std::vector<fq::i64> parse_int_list(const std::string& text);

/// Writes with LF endings regardless of platform.
inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace fqcli
