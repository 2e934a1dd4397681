#include "fixtures.hpp"

#include "io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fqcli {

namespace {

std::vector<std::string> read_data_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read fixture " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

} // namespace

std::vector<std::pair<fq::i32, fq::i32>> parse_vectors(const std::string& text) {
    std::vector<std::pair<fq::i32, fq::i32>> out;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        auto comma = pair.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("vector list must look like \"s1,t1;s2,t2;...\"");
        out.emplace_back((fq::i32)std::stol(pair.substr(0, comma)),
                         (fq::i32)std::stol(pair.substr(comma + 1)));
    }
    if (out.empty()) throw std::invalid_argument("empty vector list");
    return out;
}

std::vector<fq::i64> parse_int_list(const std::string& text) {
    std::vector<fq::i64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

MatrixFixture load_matrix_fixture(const std::string& path) {
    MatrixFixture fix;
    for (const auto& line : read_data_lines(path)) {
        std::stringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "p") {
            ss >> fix.p;
        } else {
            std::vector<fq::u32> vals;
            fq::u32 v;
            while (ss >> v) vals.push_back(v);
            if (tag == "binv")
                fix.binv = std::move(vals);
            else
                fix.rows.push_back(std::move(vals));
        }
    }
    if (fix.p == 0 || fix.binv.size() != fix.p - 1 || fix.rows.size() != fix.p)
        throw std::runtime_error("malformed matrix fixture " + path);
    return fix;
}

std::vector<PatternRow> load_pattern_fixture(const std::string& path) {
    std::vector<PatternRow> rows;
    for (const auto& line : read_data_lines(path)) {
        std::stringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag != "row") throw std::runtime_error("malformed fixture line: " + line);
        PatternRow row;
        std::string kv;
        while (ss >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::runtime_error("malformed fixture token: " + kv);
            std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "p")
                row.p = (fq::u32)std::stoul(val);
            else if (key == "sigma") {
                for (auto v : parse_int_list(val)) row.sigma.push_back((fq::u32)v);
            } else if (key == "vectors")
                row.vectors = parse_vectors(val);
            else if (key == "region")
                row.region = std::stoull(val);
            else if (key == "count")
                row.count = std::stoull(val);
            else if (key == "ratio")
                row.ratio = val;
            else
                throw std::runtime_error("unknown fixture key: " + key);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("empty fixture " + path);
    return rows;
}

std::string fixture_path(const std::string& dir, const std::string& table_id) {
    std::string id = table_id;
    std::transform(id.begin(), id.end(), id.begin(), [](unsigned char c) {
        return (char)std::tolower(c);
    });
    return dir + "/table_" + id + ".txt";
}

} // namespace fqcli
