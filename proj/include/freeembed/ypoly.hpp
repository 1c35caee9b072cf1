#pragma once

// Exact polynomials and rational functions in the aspect-ratio parameter y.

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

namespace freeembed {

using Rational = boost::rational<std::int64_t>;

/// Polynomial in y with int64 coefficients. Zero coefficients are never
/// stored. Arithmetic is exact; overflow throws std::overflow_error.
class YPolynomial {
 public:
  using Coefficients = std::map<std::uint32_t, std::int64_t>;

  YPolynomial() = default;
  YPolynomial(std::int64_t constant);  // NOLINT(google-explicit-constructor)
  explicit YPolynomial(Coefficients coeffs);

  static YPolynomial y() { return monomial(1, 1); }
  static YPolynomial monomial(std::int64_t coeff, std::uint32_t exponent);

  const Coefficients& coefficients() const noexcept { return coeffs_; }
  std::int64_t coefficient(std::uint32_t exponent) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept;
  std::int64_t leading_coefficient() const;
  /// gcd of the coefficients, positive; 0 for the zero polynomial.
  std::int64_t content() const;

  YPolynomial pow(std::uint32_t exponent) const;
  Rational evaluate(const Rational& y) const;
  double evaluate(double y) const;

  YPolynomial& operator+=(const YPolynomial& rhs);
  YPolynomial& operator-=(const YPolynomial& rhs);
  YPolynomial& operator*=(const YPolynomial& rhs);
  friend YPolynomial operator+(YPolynomial a, const YPolynomial& b) { return a += b; }
  friend YPolynomial operator-(YPolynomial a, const YPolynomial& b) { return a -= b; }
  friend YPolynomial operator*(YPolynomial a, const YPolynomial& b) { return a *= b; }
  friend YPolynomial operator-(YPolynomial a);

  /// Exact division by an integer; throws DomainError if any coefficient is
  /// not divisible.
  YPolynomial divided_by(std::int64_t divisor) const;

  /// "1 + 3y + y^2"; "0" for zero.
  std::string to_string() const;

  friend bool operator==(const YPolynomial&, const YPolynomial&) = default;

 private:
  Coefficients coeffs_;
};

/// Polynomial gcd over Z: integer content gcd times the primitive gcd, with
/// positive leading coefficient. gcd(0, 0) is 0.
YPolynomial polynomial_gcd(YPolynomial a, YPolynomial b);

/// Exact quotient a / b in Z[y]; throws DomainError if b does not divide a.
YPolynomial exact_quotient(const YPolynomial& a, const YPolynomial& b);

/// numerator / denominator, kept reduced: the two share no polynomial factor
/// and no integer factor, and the denominator has a positive leading
/// coefficient.
class RationalFunction {
 public:
  RationalFunction() : RationalFunction(YPolynomial(0)) {}
  RationalFunction(YPolynomial numerator);  // NOLINT(google-explicit-constructor)
  RationalFunction(std::int64_t constant) : RationalFunction(YPolynomial(constant)) {}  // NOLINT
  RationalFunction(YPolynomial numerator, YPolynomial denominator);

  const YPolynomial& numerator() const noexcept { return num_; }
  const YPolynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  /// True when the value is a polynomial with integer coefficients.
  bool is_polynomial() const { return den_ == YPolynomial(1); }
  /// Throws StructureError unless is_polynomial().
  YPolynomial to_polynomial() const;

  RationalFunction pow(std::uint32_t exponent) const;
  Rational evaluate(const Rational& y) const;
  double evaluate(double y) const;

  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  RationalFunction& operator/=(const RationalFunction& rhs);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

  /// "y/(1 + y)"; just the numerator when the denominator is 1.
  std::string to_string() const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  void normalize();

  YPolynomial num_;
  YPolynomial den_{1};
};

/// Parses "3", "-2", "1/2" into an exact rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

void to_json(nlohmann::json& j, const YPolynomial& p);
void from_json(const nlohmann::json& j, YPolynomial& p);
void to_json(nlohmann::json& j, const RationalFunction& f);
void from_json(const nlohmann::json& j, RationalFunction& f);

}  // namespace freeembed
