#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace landau {

// Shortest round-trip decimal form ('.' separator, locale independent).
std::string format_double(double x);

// Comma-separated writer. An optional preamble becomes a single leading
// '#' comment line (config hash, schema tag); then the header row.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::vector<std::string> header, const std::string& preamble = {});

    void row(std::initializer_list<double> cells);
    void row(const std::vector<double>& cells);
    void row_text(const std::vector<std::string>& cells);

private:
    std::ostream& os_;
    std::size_t width_;
};

} // namespace landau
