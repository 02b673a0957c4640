#include "csv.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace cqed::cli {

std::string format_double(double value) {
  std::ostringstream s;
  s.precision(17);
  s << value;
  return s.str();
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (const auto& name : header) *this << std::string_view(name);
  end_row();
}

void CsvWriter::separator() {
  if (column_ > 0) out_ << ',';
  ++column_;
}

CsvWriter& CsvWriter::operator<<(double value) {
  separator();
  out_ << format_double(value);
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view text) {
  separator();
  if (text.find_first_of(",\"\n") == std::string_view::npos) {
    out_ << text;
    return *this;
  }
  out_ << '"';
  for (char c : text) {
    if (c == '"') out_ << '"';
    out_ << (c == '\n' ? ' ' : c);
  }
  out_ << '"';
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::uint64_t value) {
  separator();
  out_ << value;
  return *this;
}

void CsvWriter::end_row() {
  if (column_ != columns_) throw std::logic_error("csv row width mismatch");
  out_ << '\n';
  column_ = 0;
}

void print_field(std::ostream& out, std::string_view key, double value) {
  out << key << " = " << format_double(value) << '\n';
}

void print_field(std::ostream& out, std::string_view key, std::string_view value) {
  out << key << " = " << value << '\n';
}

}  // namespace cqed::cli
