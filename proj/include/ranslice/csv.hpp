#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ranslice/errors.hpp"

namespace ranslice {

// Canonical number formatting for every CSV/JSON summary we emit. One code
// path so repeated runs with the same seed produce byte-identical files.
inline std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
}

inline std::string fmt_num(int v) { return std::to_string(v); }
inline std::string fmt_num(long long v) { return std::to_string(v); }
inline std::string fmt_num(std::size_t v) { return std::to_string(v); }

// Line-buffered CSV writer with a fixed header and stable column order.
class CsvWriter {
public:
    CsvWriter() = default;

    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns) {
        open(path, columns);
    }

    void open(const std::filesystem::path& path, const std::vector<std::string>& columns) {
        if (!path.parent_path().empty()) {
            std::error_code ec;
            std::filesystem::create_directories(path.parent_path(), ec);
        }
        out_.open(path);
        if (!out_) throw io_error("cannot open " + path.string() + " for writing");
        ncols_ = columns.size();
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
    }

    bool is_open() const { return out_.is_open(); }

    void row(const std::vector<std::string>& cells) {
        if (!out_.is_open()) return;
        if (cells.size() != ncols_) throw contract_error("csv row width mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    void close() {
        if (out_.is_open()) out_.close();
    }

private:
    std::ofstream out_;
    std::size_t ncols_ = 0;
};

}  // namespace ranslice
