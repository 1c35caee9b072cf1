#include "freeembed/ypoly.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "freeembed/errors.hpp"

namespace freeembed {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("YPolynomial coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("YPolynomial coefficient overflow");
  return r;
}

YPolynomial primitive_part(const YPolynomial& p) {
  if (p.is_zero()) return p;
  YPolynomial q = p.divided_by(p.content());
  return q.leading_coefficient() < 0 ? -q : q;
}

// Dense big-integer polynomials for the gcd; intermediate remainders can
// outgrow int64 even when the gcd itself is small.
using BigInt = boost::multiprecision::cpp_int;
using BigPoly = std::vector<BigInt>;  // index = power, no trailing zeros

BigPoly to_big(const YPolynomial& p) {
  BigPoly out(static_cast<std::size_t>(p.degree() + 1));
  for (const auto& [e, c] : p.coefficients()) out[e] = c;
  return out;
}

void big_primitive(BigPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  if (a.empty()) return;
  BigInt g = 0;
  for (const auto& c : a) g = boost::multiprecision::gcd(g, c);
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
}

BigPoly big_pseudo_remainder(BigPoly a, const BigPoly& b) {
  const BigInt& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const BigInt la = a.back();
    const BigInt g = boost::multiprecision::gcd(la, lb);
    const BigInt fa = lb / g;
    const BigInt fb = la / g;
    for (auto& c : a) c *= fa;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= fb * b[i];
    big_primitive(a);
  }
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// YPolynomial

YPolynomial::YPolynomial(std::int64_t constant) {
  if (constant != 0) coeffs_[0] = constant;
}

YPolynomial::YPolynomial(Coefficients coeffs) : coeffs_(std::move(coeffs)) {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0; });
}

YPolynomial YPolynomial::monomial(std::int64_t coeff, std::uint32_t exponent) {
  return YPolynomial(Coefficients{{exponent, coeff}});
}

std::int64_t YPolynomial::coefficient(std::uint32_t exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? 0 : it->second;
}

int YPolynomial::degree() const noexcept {
  return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first);
}

std::int64_t YPolynomial::leading_coefficient() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->second;
}

std::int64_t YPolynomial::content() const {
  std::int64_t g = 0;
  for (const auto& [e, c] : coeffs_) g = std::gcd(g, c);
  return g;
}

YPolynomial YPolynomial::pow(std::uint32_t exponent) const {
  YPolynomial result(1);
  YPolynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Rational YPolynomial::evaluate(const Rational& y) const {
  Rational acc(0);
  std::uint32_t prev = coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    for (std::uint32_t e = it->first; e < prev; ++e) acc *= y;
    acc += Rational(it->second);
    prev = it->first;
  }
  for (std::uint32_t e = 0; e < prev; ++e) acc *= y;
  return acc;
}

double YPolynomial::evaluate(double y) const {
  double acc = 0.0;
  for (const auto& [e, c] : coeffs_) acc += static_cast<double>(c) * std::pow(y, static_cast<double>(e));
  return acc;
}

YPolynomial& YPolynomial::operator+=(const YPolynomial& rhs) {
  for (const auto& [e, c] : rhs.coeffs_) {
    const std::int64_t v = checked_add(coefficient(e), c);
    if (v == 0) {
      coeffs_.erase(e);
    } else {
      coeffs_[e] = v;
    }
  }
  return *this;
}

YPolynomial& YPolynomial::operator-=(const YPolynomial& rhs) { return *this += -rhs; }

YPolynomial& YPolynomial::operator*=(const YPolynomial& rhs) {
  Coefficients out;
  for (const auto& [ea, ca] : coeffs_) {
    for (const auto& [eb, cb] : rhs.coeffs_) {
      auto& slot = out[ea + eb];
      slot = checked_add(slot, checked_mul(ca, cb));
    }
  }
  *this = YPolynomial(std::move(out));
  return *this;
}

YPolynomial operator-(YPolynomial a) {
  for (auto& [e, c] : a.coeffs_) c = checked_mul(c, -1);
  return a;
}

YPolynomial YPolynomial::divided_by(std::int64_t divisor) const {
  if (divisor == 0) throw DomainError("division of a polynomial by zero");
  Coefficients out;
  for (const auto& [e, c] : coeffs_) {
    if (c % divisor != 0) throw DomainError("polynomial " + to_string() + " not divisible by " + std::to_string(divisor));
    out[e] = c / divisor;
  }
  return YPolynomial(std::move(out));
}

std::string YPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    const std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0 || mag != 1) out += std::to_string(mag);
    if (e >= 1) out += "y";
    if (e >= 2) out += "^" + std::to_string(e);
  }
  return out;
}

YPolynomial polynomial_gcd(YPolynomial a, YPolynomial b) {
  if (a.is_zero()) return primitive_part(b) * YPolynomial(b.content());
  if (b.is_zero()) return primitive_part(a) * YPolynomial(a.content());
  const std::int64_t c = std::gcd(a.content(), b.content());
  BigPoly x = to_big(a);
  BigPoly y = to_big(b);
  big_primitive(x);
  big_primitive(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    BigPoly r = big_pseudo_remainder(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  YPolynomial::Coefficients out;
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (x[e] != 0) out[static_cast<std::uint32_t>(e)] = checked_mul(c, x[e].convert_to<std::int64_t>());
  }
  return YPolynomial(std::move(out));
}

YPolynomial exact_quotient(const YPolynomial& a, const YPolynomial& b) {
  if (b.is_zero()) throw DomainError("division of a polynomial by zero");
  YPolynomial q;
  YPolynomial r = a;
  const std::int64_t lb = b.leading_coefficient();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const std::int64_t lr = r.leading_coefficient();
    if (lr % lb != 0) break;
    const auto term = YPolynomial::monomial(lr / lb, static_cast<std::uint32_t>(r.degree() - b.degree()));
    q += term;
    r -= term * b;
  }
  if (!r.is_zero()) throw DomainError(b.to_string() + " does not divide " + a.to_string() + " in Z[y]");
  return q;
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(YPolynomial numerator) : num_(std::move(numerator)) {}

RationalFunction::RationalFunction(YPolynomial numerator, YPolynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = YPolynomial(1);
    return;
  }
  const YPolynomial g = polynomial_gcd(num_, den_);
  num_ = exact_quotient(num_, g);
  den_ = exact_quotient(den_, g);
  const std::int64_t c = std::gcd(num_.content(), den_.content());
  num_ = num_.divided_by(c);
  den_ = den_.divided_by(c);
  if (den_.leading_coefficient() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

YPolynomial RationalFunction::to_polynomial() const {
  if (!is_polynomial()) throw StructureError("rational function " + to_string() + " is not a polynomial");
  return num_;
}

RationalFunction RationalFunction::pow(std::uint32_t exponent) const {
  RationalFunction out;
  out.num_ = num_.pow(exponent);
  out.den_ = den_.pow(exponent);
  return out;
}

Rational RationalFunction::evaluate(const Rational& y) const {
  const Rational d = den_.evaluate(y);
  if (d == Rational(0)) throw DomainError("rational function " + to_string() + " has a pole at " + freeembed::to_string(y));
  return num_.evaluate(y) / d;
}

double RationalFunction::evaluate(double y) const { return num_.evaluate(y) / den_.evaluate(y); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) {
  return *this += RationalFunction(-rhs.num_, rhs.den_);
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
  if (rhs.is_zero()) throw DomainError("division by the zero rational function");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

std::string RationalFunction::to_string() const {
  if (is_polynomial()) return num_.to_string();
  auto wrap = [](const YPolynomial& p) {
    return p.coefficients().size() > 1 ? "(" + p.to_string() + ")" : p.to_string();
  };
  return wrap(num_) + "/" + wrap(den_);
}

// ---------------------------------------------------------------------------
// Rational helpers

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw ValidationError("cannot parse rational '" + text + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(std::string_view(text).substr(slash + 1));
  if (den == 0) throw ValidationError("rational '" + text + "' has zero denominator");
  return Rational(parse_int(std::string_view(text).substr(0, slash)), den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// ---------------------------------------------------------------------------
// JSON

void to_json(nlohmann::json& j, const YPolynomial& p) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [e, c] : p.coefficients()) coeffs[std::to_string(e)] = c;
  j = nlohmann::json{{"coeffs", coeffs}};
}

void from_json(const nlohmann::json& j, YPolynomial& p) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_object()) {
    throw ValidationError("polynomial JSON must look like {\"coeffs\": {\"0\": 1}}");
  }
  YPolynomial::Coefficients coeffs;
  for (const auto& [key, value] : j.at("coeffs").items()) {
    std::uint32_t e = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), e);
    if (ec != std::errc{} || ptr != key.data() + key.size() || !value.is_number_integer()) {
      throw ValidationError("bad polynomial JSON term \"" + key + "\"");
    }
    coeffs[e] = value.get<std::int64_t>();
  }
  p = YPolynomial(std::move(coeffs));
}

void to_json(nlohmann::json& j, const RationalFunction& f) {
  j = nlohmann::json{{"numerator", f.numerator()}, {"denominator", f.denominator()}};
}

void from_json(const nlohmann::json& j, RationalFunction& f) {
  if (!j.is_object() || !j.contains("numerator") || !j.contains("denominator")) {
    throw ValidationError("rational function JSON needs numerator and denominator");
  }
  f = RationalFunction(j.at("numerator").get<YPolynomial>(), j.at("denominator").get<YPolynomial>());
}

}  // namespace freeembed
