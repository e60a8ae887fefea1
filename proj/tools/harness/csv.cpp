#include "harness/csv.hpp"

#include <fmt/format.h>

#include "qfdense/errors.hpp"

namespace qfdense::harness {

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::string format_real(const FixedReal& x) { return format_double(x.to_double()); }

void CsvWriter::meta(const std::string& key, const std::string& value) {
  out_ << "# " << key << ": " << value << '\n';
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  columns_ = columns.size();
  write_fields(columns);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw Error("csv: row width does not match the header");
  write_fields(fields);
}

void CsvWriter::write_fields(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out_ << f;
      continue;
    }
    out_ << '"';
    for (char c : f) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }
  out_ << '\n';
}

}  // namespace qfdense::harness
