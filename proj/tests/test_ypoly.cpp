#include <doctest.h>

#include <limits>
#include <random>
#include <stdexcept>

#include "freeembed/errors.hpp"
#include "freeembed/ypoly.hpp"

using namespace freeembed;

namespace {

YPolynomial random_poly(std::mt19937& rng, int max_degree = 4, int max_coeff = 5) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  YPolynomial::Coefficients c;
  const int d = deg(rng);
  for (int e = 0; e <= d; ++e) c[static_cast<std::uint32_t>(e)] = coeff(rng);
  return YPolynomial(c);
}

YPolynomial nonzero_poly(std::mt19937& rng) {
  for (;;) {
    auto p = random_poly(rng, 3, 4);
    if (!p.is_zero()) return p;
  }
}

const YPolynomial Y = YPolynomial::y();

}  // namespace

TEST_CASE("YPolynomial basics") {
  const YPolynomial p = 1 + 3 * Y + Y * Y;
  CHECK(p.to_string() == "1 + 3y + y^2");
  CHECK((1 - 2 * Y).to_string() == "1 - 2y");
  CHECK(YPolynomial().to_string() == "0");
  CHECK(YPolynomial(0).is_zero());
  CHECK(YPolynomial().degree() == -1);
  CHECK(p.degree() == 2);
  CHECK(p.coefficient(1) == 3);
  CHECK(p.coefficient(7) == 0);
  CHECK(p.leading_coefficient() == 1);
  CHECK((1 + Y).pow(3) == 1 + 3 * Y + 3 * Y * Y + Y.pow(3));
  CHECK(YPolynomial(YPolynomial::Coefficients{{0, 0}, {2, 0}}).is_zero());
  CHECK((6 * Y + 4).content() == 2);
  CHECK((6 * Y + 4).divided_by(2) == 3 * Y + 2);
  CHECK_THROWS_AS((3 * Y + 1).divided_by(2), DomainError);
  CHECK_THROWS_AS(Y.divided_by(0), DomainError);
  CHECK(p.evaluate(Rational(1, 2)) == Rational(11, 4));
  CHECK(p.evaluate(0.5) == doctest::Approx(2.75));
}

TEST_CASE("YPolynomial overflow is detected") {
  const YPolynomial big(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big + 1, std::overflow_error);
  CHECK_THROWS_AS(big * 2, std::overflow_error);
}

TEST_CASE("YPolynomial ring axioms on random inputs") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_poly(rng);
    const auto b = random_poly(rng);
    const auto c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(-(-a) == a);
    const Rational at(3, 7);
    CHECK((a * b).evaluate(at) == a.evaluate(at) * b.evaluate(at));
  }
}

TEST_CASE("polynomial gcd and exact division") {
  CHECK(polynomial_gcd((1 + Y) * (1 + Y), (1 + Y) * Y) == 1 + Y);
  CHECK(polynomial_gcd(2 * Y, 4 * Y) == 2 * Y);
  CHECK(polynomial_gcd(YPolynomial(), 3 + Y) == 3 + Y);
  CHECK(exact_quotient(Y * Y - 1, Y - 1) == Y + 1);
  CHECK_THROWS_AS(exact_quotient(Y * Y + 1, Y - 1), DomainError);
  CHECK_THROWS_AS(exact_quotient(Y, YPolynomial()), DomainError);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = nonzero_poly(rng);
    const auto b = nonzero_poly(rng);
    const auto g = polynomial_gcd(a, b);
    CHECK_NOTHROW(exact_quotient(a, g));
    CHECK_NOTHROW(exact_quotient(b, g));
    CHECK(exact_quotient(a * b, b) == a);
  }
}

TEST_CASE("RationalFunction normal form and arithmetic") {
  const RationalFunction upper(Y, 1 + Y);
  CHECK(upper.to_string() == "y/(1 + y)");
  CHECK(RationalFunction(2 * Y + 2, 4 * Y + 4) == RationalFunction(1, 2));
  CHECK(RationalFunction(Y, -1 - Y) == RationalFunction(-Y, 1 + Y));
  CHECK(RationalFunction((1 + Y) * Y, 1 + Y).is_polynomial());
  CHECK(RationalFunction((1 + Y) * Y, 1 + Y).to_polynomial() == Y);
  CHECK_THROWS_AS(upper.to_polynomial(), StructureError);
  CHECK_THROWS_AS(RationalFunction(Y, YPolynomial()), DomainError);
  CHECK_THROWS_AS(upper / RationalFunction(0), DomainError);
  CHECK_THROWS_AS(upper.evaluate(Rational(-1)), DomainError);
  CHECK(upper + RationalFunction(1, 1 + Y) == RationalFunction(1));
  CHECK(upper.pow(2).evaluate(Rational(1)) == Rational(1, 4));
  CHECK(upper.evaluate(0.5) == doctest::Approx(1.0 / 3.0));

  std::mt19937 rng(99);
  const Rational at(5, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalFunction f(random_poly(rng, 3, 4), nonzero_poly(rng) * (2 + Y));
    const RationalFunction g(random_poly(rng, 3, 4), nonzero_poly(rng) * (2 + Y));
    if (f.denominator().evaluate(at) == Rational(0) || g.denominator().evaluate(at) == Rational(0)) continue;
    CHECK((f + g).evaluate(at) == f.evaluate(at) + g.evaluate(at));
    CHECK((f * g).evaluate(at) == f.evaluate(at) * g.evaluate(at));
    CHECK((f - g) + g == f);
    if (!g.is_zero()) CHECK((f / g) * g == f);
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(to_string(Rational(-2, 3)) == "-2/3");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("a/2"), ValidationError);
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
}

TEST_CASE("JSON round trip is exact") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_poly(rng, 6, 1000);
    const nlohmann::json j = p;
    CHECK(nlohmann::json::parse(j.dump()).get<YPolynomial>() == p);
    const RationalFunction f(p, nonzero_poly(rng));
    const nlohmann::json jf = f;
    CHECK(nlohmann::json::parse(jf.dump()).get<RationalFunction>() == f);
  }
  CHECK(nlohmann::json(1 + 2 * Y).dump() == R"({"coeffs":{"0":1,"1":2}})");
  CHECK_THROWS_AS(nlohmann::json::parse("[1]").get<YPolynomial>(), ValidationError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"coeffs":{"x":1}})").get<YPolynomial>(), ValidationError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"numerator":{"coeffs":{}}})").get<RationalFunction>(), ValidationError);
}
