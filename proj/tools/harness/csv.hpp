#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qfdense/fixed_real.hpp"

namespace qfdense::harness {

/// Floats with 17 significant digits ("{:.17g}").
std::string format_double(double x);
/// Nearest double of a certified value, formatted as above.
std::string format_real(const FixedReal& x);

/// RFC 4180 style writer: '#' metadata lines, then one header row, then
/// data rows. Fields containing a comma, quote or newline are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void meta(const std::string& key, const std::string& value);
  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);

 private:
  void write_fields(const std::vector<std::string>& fields);

  std::ostream& out_;
  std::size_t columns_ = 0;
};

}  // namespace qfdense::harness
