#include "qfdense/forms.hpp"

#include <sstream>
#include <vector>

#include "qfdense/errors.hpp"
#include "qfdense/literal.hpp"

namespace qfdense {

namespace {

Rational det3(const Gram& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
         g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

Rational parse_rational_token(const std::string& token) {
  const RealLiteral lit = parse_real_literal(token);
  if (lit.kind != RealLiteral::Kind::rational && lit.kind != RealLiteral::Kind::decimal) {
    throw InvalidForm("form entries must be rational, got '" + token + "'");
  }
  return lit.rational;
}

}  // namespace

bool is_symmetric(const Gram& g) {
  return g[0][1] == g[1][0] && g[0][2] == g[2][0] && g[1][2] == g[2][1];
}

Rational evaluate_gram(const Gram& g, const IntVec3& v) {
  Rational sum = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    sum += g[i][i] * Rational(v[i] * v[i]);
    for (std::size_t j = i + 1; j < 3; ++j) sum += 2 * g[i][j] * Rational(v[i] * v[j]);
  }
  return sum;
}

TernaryForm::TernaryForm(Gram gram) : gram_(std::move(gram)) {
  if (!is_symmetric(gram_)) throw InvalidForm("Gram matrix is not symmetric");
  const Rational d3 = det3(gram_);
  if (d3 == 0) throw InvalidForm("form is degenerate (det = 0)");
  // With det != 0, Sylvester's criterion on leading minors detects both
  // definite cases; everything else has signature (2,1) or (1,2).
  const Rational d1 = gram_[0][0];
  const Rational d2 = gram_[0][0] * gram_[1][1] - gram_[0][1] * gram_[1][0];
  const bool positive = sgn(d1) > 0 && sgn(d2) > 0 && sgn(d3) > 0;
  const bool negative = sgn(d1) < 0 && sgn(d2) > 0 && sgn(d3) < 0;
  if (positive || negative) throw InvalidForm("form is definite, not indefinite");
}

TernaryForm TernaryForm::standard() {
  Gram g;
  for (auto& row : g) row.fill(Rational(0));
  g[1][1] = 1;
  g[0][2] = -2;
  g[2][0] = -2;
  return TernaryForm(g);
}

TernaryForm TernaryForm::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.size() != 6) throw InvalidForm("form literal needs six entries: a11 a22 a33 a12 a13 a23");
  Gram g;
  g[0][0] = parse_rational_token(tokens[0]);
  g[1][1] = parse_rational_token(tokens[1]);
  g[2][2] = parse_rational_token(tokens[2]);
  g[0][1] = g[1][0] = parse_rational_token(tokens[3]);
  g[0][2] = g[2][0] = parse_rational_token(tokens[4]);
  g[1][2] = g[2][1] = parse_rational_token(tokens[5]);
  return TernaryForm(g);
}

std::string TernaryForm::serialize() const {
  return gram_[0][0].get_str() + " " + gram_[1][1].get_str() + " " + gram_[2][2].get_str() + " " +
         gram_[0][1].get_str() + " " + gram_[0][2].get_str() + " " + gram_[1][2].get_str();
}

Rational TernaryForm::determinant() const { return det3(gram_); }

Rational TernaryForm::evaluate(const IntVec3& v) const { return evaluate_gram(gram_, v); }

ShiftVector::ShiftVector(FixedReal a, FixedReal b, FixedReal c)
    : alpha(std::move(a)), beta(std::move(b)), gamma(std::move(c)) {
  if (alpha.frac_bits() != beta.frac_bits() || alpha.frac_bits() != gamma.frac_bits()) {
    throw InvalidInput("shift components use different precisions");
  }
}

const FixedReal& ShiftVector::operator[](std::size_t i) const {
  switch (i) {
    case 0:
      return alpha;
    case 1:
      return beta;
    case 2:
      return gamma;
  }
  throw std::out_of_range("ShiftVector index");
}

ShiftVector ShiftVector::with_bits(int frac_bits) const {
  return {alpha.with_bits(frac_bits), beta.with_bits(frac_bits), gamma.with_bits(frac_bits)};
}

ShiftVector ShiftVector::zero(int frac_bits) {
  return {FixedReal(frac_bits), FixedReal(frac_bits), FixedReal(frac_bits)};
}

FixedReal evaluate(const TernaryForm& q, const RealVec3& v, int log2_tol) {
  const int bits = v[0].frac_bits();
  const Gram& g = q.gram();
  FixedReal sum(bits);
  for (std::size_t i = 0; i < 3; ++i) {
    if (g[i][i] != 0) sum += FixedReal::from_rational(g[i][i], bits) * (v[i] * v[i]);
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (g[i][j] != 0) sum += FixedReal::from_rational(2 * g[i][j], bits) * (v[i] * v[j]);
    }
  }
  sum.require_error_within(log2_tol, "form evaluation");
  return sum;
}

FixedReal evaluate_shifted(const TernaryForm& q, const ShiftVector& xi, const IntVec3& v,
                           int log2_tol) {
  const int bits = xi.frac_bits();
  RealVec3 w{FixedReal::from_integer(v[0], bits) + xi.alpha,
             FixedReal::from_integer(v[1], bits) + xi.beta,
             FixedReal::from_integer(v[2], bits) + xi.gamma};
  return evaluate(q, w, log2_tol);
}

std::optional<IntVec3> find_isotropic_vector(const Gram& g, long bound) {
  if (bound < 1) throw InvalidInput("isotropic search bound must be >= 1");
  IntVec3 v;
  auto hit = [&](long a, long b, long c) {
    if (a == 0 && b == 0 && c == 0) return false;
    if (gcd(gcd(Integer(a), Integer(b)), Integer(c)) != 1) return false;
    v = {Integer(a), Integer(b), Integer(c)};
    return evaluate_gram(g, v) == 0;
  };
  // Normalized vectors (first nonzero coordinate positive), ascending
  // lexicographic order.
  for (long c = 1; c <= bound; ++c) {
    if (hit(0, 0, c)) return v;
  }
  for (long b = 1; b <= bound; ++b) {
    for (long c = -bound; c <= bound; ++c) {
      if (hit(0, b, c)) return v;
    }
  }
  for (long a = 1; a <= bound; ++a) {
    for (long b = -bound; b <= bound; ++b) {
      for (long c = -bound; c <= bound; ++c) {
        if (hit(a, b, c)) return v;
      }
    }
  }
  return std::nullopt;
}

std::optional<IntVec3> find_isotropic_vector(const TernaryForm& q, long bound) {
  return find_isotropic_vector(q.gram(), bound);
}

bool verify_equivalence(const TernaryForm& qp, const Integer& m, const IntMatrix3& M) {
  if (m == 0) return false;
  const TernaryForm standard = TernaryForm::standard();
  const Gram& std_gram = standard.gram();
  // (M G M^T)_ij = sum_kl M_ik G_kl M_jl, exactly.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      Rational entry = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t l = 0; l < 3; ++l) {
          if (std_gram[k][l] != 0) entry += Rational(M[i][k] * M[j][l]) * std_gram[k][l];
        }
      }
      if (entry != m * qp.gram()[i][j]) return false;
    }
  }
  return true;
}

}  // namespace qfdense
