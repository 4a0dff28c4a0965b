#include "riskmin/csv.hpp"

#include <charconv>
#include <cmath>

namespace riskmin {

std::string format_float(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_int(std::int64_t x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (row_open_) out_ << ',';
  out_ << s;
  row_open_ = true;
  return *this;
}

void CsvWriter::endrow() {
  out_ << '\n';
  row_open_ = false;
}

}  // namespace riskmin
