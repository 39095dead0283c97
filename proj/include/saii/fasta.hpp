#pragma once

#include "saii/error.hpp"

#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace saii::io {

struct FastaRecord {
    std::string id;
    std::string sequence;
};

namespace detail {

inline void append_stripped(std::string& dst, const std::string& line) {
    for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) dst.push_back(ch);
}

}  // namespace detail

// '>' starts a record; whitespace inside sequence lines is dropped and blank
// lines are ignored. Input that does not start with '>' is read as a single
// raw-text record with an empty id.
inline std::vector<FastaRecord> read_records(std::istream& in) {
    std::vector<FastaRecord> records;
    std::string line;
    bool fasta = false;
    bool seen_content = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = 0;
        while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first]))) ++first;
        if (first == line.size()) continue;

        if (!seen_content) {
            seen_content = true;
            fasta = line[first] == '>';
            if (!fasta) records.push_back({});
        }
        if (fasta && line[first] == '>') {
            std::string id = line.substr(first + 1);
            while (!id.empty() && std::isspace(static_cast<unsigned char>(id.back()))) id.pop_back();
            records.push_back({std::move(id), {}});
            continue;
        }
        detail::append_stripped(records.back().sequence, line);
    }
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].sequence.empty())
            throw FormatError("record " + std::to_string(i) + " ('" + records[i].id +
                              "') has an empty sequence");
    if (records.empty()) throw EmptyText();
    return records;
}

inline std::vector<FastaRecord> parse_records(const std::string& text) {
    std::istringstream in(text);
    return read_records(in);
}

inline std::vector<FastaRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return read_records(in);
}

}  // namespace saii::io
