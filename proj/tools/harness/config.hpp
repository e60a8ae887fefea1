#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfdense/errors.hpp"
#include "qfdense/forms.hpp"
#include "qfdense/literal.hpp"

namespace qfdense::harness {

class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Flat key = value configuration. Later sources override earlier ones:
/// defaults, then the config file, then command-line overrides.
class RunConfig {
 public:
  /// Parses "key = value" lines; '#' starts a comment line. Duplicate keys
  /// within one file are rejected.
  static RunConfig parse(std::string_view text);
  static RunConfig load_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  /// "key=value".
  void set_assignment(std::string_view assignment);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::optional<std::int64_t> find_int(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::optional<double> find_double(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::int64_t> get_int_list(const std::string& key,
                                         std::vector<std::int64_t> fallback) const;
  std::vector<RealLiteral> get_literals(const std::string& key, std::size_t count) const;
  RealLiteral get_literal(const std::string& key, const std::string& fallback) const;

  /// Requires every key to be in `allowed`.
  void require_known(const std::vector<std::string>& allowed) const;

  /// Fractional bits F (key "precision", default 256, at least 64).
  int precision() const;
  /// Log2 of the reduction tolerance (key "tolerance_bits", default 40).
  int log2_tol() const;
  int threads() const;
  std::uint64_t seed() const;

 private:
  std::string require(const std::string& key) const;

  std::map<std::string, std::string> values_;
};

/// Splits on whitespace.
std::vector<std::string> split_words(std::string_view text);

}  // namespace qfdense::harness
