#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace riskmin {

// Locale-independent decimal rendering with 17 significant digits; round-trips
// any double exactly. Infinities and NaNs come out as inf/-inf/nan.
std::string format_float(double x);

std::string format_int(std::int64_t x);

// Minimal comma-separated writer: cell() appends to the current row, endrow()
// terminates it with '\n'. Values are pre-formatted strings; no quoting layer,
// callers never emit commas inside cells.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double x) { return cell(format_float(x)); }
  CsvWriter& cell(std::int64_t x) { return cell(format_int(x)); }
  void endrow();

 private:
  std::ostream& out_;
  bool row_open_ = false;
};

}  // namespace riskmin
