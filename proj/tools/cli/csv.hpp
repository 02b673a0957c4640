#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cqed::cli {

// Shortest round-trip is not guaranteed by every libstdc++; 17 significant
// digits always is.
std::string format_double(double value);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& operator<<(double value);
  CsvWriter& operator<<(std::string_view text);
  CsvWriter& operator<<(std::uint64_t value);
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t column_ = 0;
};

// "key = value" summary line.
void print_field(std::ostream& out, std::string_view key, double value);
void print_field(std::ostream& out, std::string_view key, std::string_view value);

}  // namespace cqed::cli
