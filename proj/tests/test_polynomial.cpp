#include <doctest.h>

#include <random>

#include "dimerbfz/polynomial.hpp"

using namespace dimerbfz;

namespace {

Polynomial x(std::size_t i, std::size_t n = 3) { return Polynomial::variable(i, n); }
Polynomial k(long c, std::size_t n = 3) { return Polynomial::constant(c, n); }

Polynomial random_poly(std::mt19937& rng, std::size_t n, int terms, unsigned max_exp) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<unsigned> ex(0, max_exp);
  Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    Exponents e(n);
    for (auto& v : e) v = ex(rng);
    p += Polynomial::term(e, coef(rng));
  }
  return p;
}

const std::vector<std::string> names{"x1", "x2", "x3"};

}  // namespace

TEST_CASE("arithmetic and canonical text") {
  const Polynomial p = x(0) * x(0) * k(2) + x(1) * x(2) - k(3);
  CHECK(p.to_string(names) == "2*x1^2+x2*x3-3");
  CHECK((p - p).is_zero());
  CHECK((x(0) + x(1)).pow(2) == x(0) * x(0) + k(2) * x(0) * x(1) + x(1) * x(1));
  CHECK(p.degree_in(0) == 2);
  CHECK(p.main_variable() == 2);
  CHECK(k(0).to_string(names) == "0");
  CHECK((k(-1) * x(1)).to_string(names) == "-x2");
}

TEST_CASE("exact division and gcd") {
  const Polynomial a = x(0) * x(0) - k(1);
  const Polynomial b = x(0) - k(1);
  CHECK(exact_divide(a, b) == x(0) + k(1));
  CHECK_THROWS_AS(exact_divide(a, x(1)), std::domain_error);
  CHECK(gcd(a, b) == b);
  CHECK(gcd(k(6) * x(0), k(4) * x(0) * x(1)) == k(2) * x(0));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial f = random_poly(rng, 3, 3, 2);
    const Polynomial g = random_poly(rng, 3, 3, 2);
    const Polynomial h = random_poly(rng, 3, 2, 2);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    const Polynomial d = gcd(f * h, g * h);
    CHECK_NOTHROW(exact_divide(d, h));
    CHECK_NOTHROW(exact_divide(f * h, d));
    CHECK_NOTHROW(exact_divide(g * h, d));
  }
}

TEST_CASE("rational function normal form") {
  const RationalFunction f(k(2) * x(0) * x(0) + k(2) * x(0), k(2) * x(0));
  CHECK(f == RationalFunction(x(0) + k(1)));
  CHECK(f.denominator() == k(1));
  CHECK(RationalFunction(x(0) * x(0) - k(1), x(0) - k(1)).numerator() == x(0) + k(1));
  CHECK(RationalFunction(x(0), -x(1)).denominator().leading_coefficient() > 0);
  CHECK_THROWS_AS(RationalFunction(x(0), k(0)), std::domain_error);

  const RationalFunction g(x(0) + x(2), x(1));
  CHECK(g.to_string(names) == "(x1+x3)/x2");
  CHECK(is_laurent(g));
  CHECK_FALSE(is_laurent(RationalFunction(x(0) + k(1), x(1) + k(1))));
  CHECK(is_laurent(RationalFunction(k(7))));

  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Polynomial p = random_poly(rng, 3, 3, 2);
    const Polynomial q = random_poly(rng, 3, 3, 2);
    if (p.is_zero() || q.is_zero()) continue;
    const RationalFunction r(p, q);
    CHECK(r / r == RationalFunction::constant(1, 3));
    CHECK(r - r == RationalFunction::constant(0, 3));
    CHECK((r + RationalFunction(q)) * RationalFunction(q) == RationalFunction(p + q * q));
  }
}
