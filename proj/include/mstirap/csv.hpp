#pragma once

// Deterministic CSV output: fixed 12-significant-digit formatting so that
// repeated runs produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mstirap {

inline std::string format_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(const std::vector<double>& row) {
        if (row.size() != header_.size())
            throw std::invalid_argument("CsvTable: row width does not match header");
        rows_.push_back(row);
    }

    std::string to_string() const {
        std::ostringstream os;
        for (size_t j = 0; j < header_.size(); ++j) {
            os << (j ? "," : "");
            if (header_[j].find(',') != std::string::npos)
                os << '"' << header_[j] << '"';
            else
                os << header_[j];
        }
        os << "\n";
        for (const auto& row : rows_) {
            for (size_t j = 0; j < row.size(); ++j)
                os << (j ? "," : "") << format_number(row[j]);
            os << "\n";
        }
        return os.str();
    }

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("CsvTable: cannot open '" + path + "' for writing");
        out << to_string();
        if (!out) throw std::runtime_error("CsvTable: write to '" + path + "' failed");
    }

    size_t row_count() const { return rows_.size(); }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

}  // namespace mstirap
