#include "epq/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace epq {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::string path, const ConfigEcho& config,
                     std::vector<std::string> columns)
    : path_(std::move(path)), n_columns_(columns.size()) {
    for (const auto& [key, value] : config)
        body_ += "# " + key + " = " + value + "\n";
    for (size_t k = 0; k < columns.size(); ++k)
        body_ += (k ? "," : "") + columns[k];
    body_ += "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_columns_)
        throw std::logic_error("csv row width mismatch");
    for (size_t k = 0; k < values.size(); ++k)
        body_ += (k ? "," : "") + format_double(values[k]);
    body_ += "\n";
}

void CsvWriter::write() { write_text_file(path_, body_); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace epq
