#include "landau/csv.hpp"

#include "landau/error.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace landau {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header, const std::string& preamble)
    : os_(os), width_(header.size()) {
    if (!preamble.empty()) os_ << "# " << preamble << '\n';
    row_text(header);
}

void CsvWriter::row(std::initializer_list<double> cells) { row(std::vector<double>(cells)); }

void CsvWriter::row(const std::vector<double>& cells) {
    if (cells.size() != width_) throw DomainError("CSV row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << format_double(cells[i]);
    os_ << '\n';
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw DomainError("CSV row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
}

} // namespace landau
