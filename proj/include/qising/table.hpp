#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qising/errors.hpp"

namespace qising {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Delimited table with '#'-prefixed comment header lines.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_comment(std::string line) { comments_.push_back(std::move(line)); }

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != columns_.size())
            throw domain_error("table row width differs from column count");
        rows_.push_back(std::move(cells));
    }

    std::size_t n_rows() const { return rows_.size(); }

    std::string render(char sep) const {
        std::string out;
        for (const auto& c : comments_) {
            out += "# ";
            out += c;
            out += '\n';
        }
        append_joined(out, columns_, sep);
        for (const auto& r : rows_) append_joined(out, r, sep);
        return out;
    }

private:
    static void append_joined(std::string& out, const std::vector<std::string>& cells, char sep) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += sep;
            out += cells[i];
        }
        out += '\n';
    }

    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
};

// Write via a temporary in the target directory and rename, so a failing run
// never leaves a partial file behind.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw error("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os.flush()) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        throw error("failed renaming " + tmp.string() + " to " + target.string() + ": " +
                    ec.message());
    }
}

} // namespace qising
