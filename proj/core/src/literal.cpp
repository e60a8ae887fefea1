#include "qfdense/literal.hpp"

#include <cctype>
#include <vector>

#include "qfdense/errors.hpp"

namespace qfdense {

namespace {

[[noreturn]] void bad(std::string_view text, std::string_view why) {
  throw InvalidInput("bad real literal '" + std::string(text) + "': " + std::string(why));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// [+-]?digits
bool parse_signed(std::string_view s, Integer& out) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
  if (!all_digits(body)) return false;
  out = Integer(std::string(body), 10);
  if (s.front() == '-') out = -out;
  return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

bool RealLiteral::is_rational() const {
  switch (kind) {
    case Kind::rational:
    case Kind::decimal:
      return true;
    case Kind::sqrt:
    case Kind::surd: {
      if (v == 0) return true;
      const Integer r = isqrt(d);
      return r * r == d;
    }
    case Kind::pi:
      return false;
  }
  return false;
}

FixedReal RealLiteral::evaluate(int frac_bits) const {
  switch (kind) {
    case Kind::rational:
    case Kind::decimal:
      return FixedReal::from_rational(rational, frac_bits);
    case Kind::sqrt:
    case Kind::surd:
      if (is_rational()) {
        Rational r(u + v * isqrt(d), w);
        r.canonicalize();
        return FixedReal::from_rational(r, frac_bits);
      }
      return FixedReal::from_surd(u, v, w, d, frac_bits);
    case Kind::pi:
      return FixedReal::pi(frac_bits);
  }
  throw InvalidInput("unknown literal kind");
}

RealLiteral parse_real_literal(std::string_view text) {
  RealLiteral lit;
  lit.text = std::string(text);
  if (text.empty()) bad(text, "empty");

  if (text == "pi") {
    lit.kind = RealLiteral::Kind::pi;
    return lit;
  }
  if (text.starts_with("sqrt:")) {
    lit.kind = RealLiteral::Kind::sqrt;
    auto body = text.substr(5);
    if (!all_digits(body)) bad(text, "expected sqrt:<nonnegative integer>");
    lit.v = 1;
    lit.d = Integer(std::string(body), 10);
    return lit;
  }
  if (text.starts_with("surd:")) {
    lit.kind = RealLiteral::Kind::surd;
    auto parts = split(text.substr(5), ',');
    if (parts.size() != 4) bad(text, "expected surd:u,v,w,d");
    if (!parse_signed(parts[0], lit.u) || !parse_signed(parts[1], lit.v) ||
        !parse_signed(parts[2], lit.w) || !all_digits(parts[3])) {
      bad(text, "expected integers u,v,w and nonnegative d");
    }
    lit.d = Integer(std::string(parts[3]), 10);
    if (lit.w == 0) bad(text, "w must be nonzero");
    return lit;
  }
  if (text.starts_with("dec:")) {
    lit.kind = RealLiteral::Kind::decimal;
    std::string_view body = text.substr(4);
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    std::string_view whole = body.substr(0, dot);
    std::string_view fraction = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (!all_digits(whole) || (dot != std::string_view::npos && !all_digits(fraction))) {
      bad(text, "expected dec:[+-]digits[.digits]");
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fraction.size());
    Integer digits(std::string(whole) + std::string(fraction), 10);
    if (negative) digits = -digits;
    lit.rational = Rational(digits, scale);
    lit.rational.canonicalize();
    lit.decimal_tolerance = Rational(1, 2 * scale);
    lit.decimal_tolerance.canonicalize();
    return lit;
  }

  lit.kind = RealLiteral::Kind::rational;
  const auto slash = text.find('/');
  Integer num, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_signed(text, num)) bad(text, "expected p/q");
  } else {
    if (!parse_signed(text.substr(0, slash), num) || !all_digits(text.substr(slash + 1))) {
      bad(text, "expected p/q");
    }
    den = Integer(std::string(text.substr(slash + 1)), 10);
    if (den == 0) bad(text, "zero denominator");
  }
  lit.rational = Rational(num, den);
  lit.rational.canonicalize();
  return lit;
}

FixedReal parse_real(std::string_view text, int frac_bits) {
  return parse_real_literal(text).evaluate(frac_bits);
}

}  // namespace qfdense
