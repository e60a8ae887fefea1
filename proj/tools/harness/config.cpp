#include "harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qfdense::harness {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config key '" + key + "': cannot parse '" + text + "' as a number");
  }
  return value;
}

}  // namespace

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    if (cfg.has(key)) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    cfg.values_[key] = trim(std::string_view(body).substr(eq + 1));
  }
  return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void RunConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

void RunConfig::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  const std::string key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("override with empty key");
  set(key, trim(assignment.substr(eq + 1)));
}

std::string RunConfig::require(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing required config key '" + key + "'");
  return it->second;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::optional<std::int64_t> RunConfig::find_int(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return parse_number<std::int64_t>(key, it->second);
}

std::int64_t RunConfig::get_int(const std::string& key, std::int64_t fallback) const {
  return find_int(key).value_or(fallback);
}

std::optional<double> RunConfig::find_double(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return parse_number<double>(key, it->second);
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  return find_double(key).value_or(fallback);
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<std::int64_t> RunConfig::get_int_list(const std::string& key,
                                                  std::vector<std::int64_t> fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<std::int64_t> out;
  std::string text = it->second;
  std::replace(text.begin(), text.end(), ',', ' ');
  for (const auto& w : split_words(text)) out.push_back(parse_number<std::int64_t>(key, w));
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

std::vector<RealLiteral> RunConfig::get_literals(const std::string& key, std::size_t count) const {
  const auto words = split_words(require(key));
  if (words.size() != count) {
    throw ConfigError("config key '" + key + "': expected " + std::to_string(count) +
                      " real literals, got " + std::to_string(words.size()));
  }
  std::vector<RealLiteral> out;
  for (const auto& w : words) out.push_back(parse_real_literal(w));
  return out;
}

RealLiteral RunConfig::get_literal(const std::string& key, const std::string& fallback) const {
  return parse_real_literal(get_string(key, fallback));
}

void RunConfig::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& [key, value] : values_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown config key '" + key + "' for this subcommand");
    }
  }
}

int RunConfig::precision() const {
  const std::int64_t f = get_int("precision", kDefaultFracBits);
  if (f < kMinFracBits) {
    throw ConfigError("precision must be at least " + std::to_string(kMinFracBits) + " bits");
  }
  if (f > 1 << 16) throw ConfigError("precision above 65536 bits is not supported");
  return static_cast<int>(f);
}

int RunConfig::log2_tol() const {
  const std::int64_t b = get_int("tolerance_bits", -kDefaultToleranceLog2);
  if (b < 1 || b > 1 << 16) throw ConfigError("tolerance_bits must be in [1, 65536]");
  return -static_cast<int>(b);
}

int RunConfig::threads() const {
  const std::int64_t n = get_int("threads", 1);
  if (n < 1 || n > 1024) throw ConfigError("threads must be in [1, 1024]");
  return static_cast<int>(n);
}

std::uint64_t RunConfig::seed() const {
  auto it = values_.find("seed");
  if (it == values_.end()) return 20240607;
  return parse_number<std::uint64_t>("seed", it->second);
}

}  // namespace qfdense::harness
