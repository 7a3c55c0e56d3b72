#include <doctest.h>

#include "gasket/error.h"
#include "gasket/exact.h"

using namespace gasket;

TEST_CASE("parse_rational accepts fractions and decimals") {
  CHECK(parse_rational("59/100") == Rational(59, 100));
  CHECK(parse_rational("0.59") == Rational(59, 100));
  CHECK(parse_rational("-1.25") == Rational(-5, 4));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational(""), DomainError);
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("0.5/2"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), DomainError);
}

TEST_CASE("polynomial evaluation and derivative") {
  Polynomial p{-1, 1, 1};  // x^2 + x - 1
  CHECK(p.degree() == 2);
  CHECK(p(Rational(1, 2)) == Rational(-1, 4));
  CHECK(p.sign_at(Rational(1)) == 1);
  CHECK(p.sign_at(Rational(0)) == -1);
  CHECK(p.derivative() == Polynomial{1, 2});
  CHECK(p.to_string() == "x^2 + x - 1");
  CHECK(Polynomial{0, 0}.is_zero());
}

TEST_CASE("division with remainder reconstructs the dividend") {
  RationalPoly a(Polynomial{3, 0, -2, 5, 1});
  RationalPoly b(Polynomial{1, -1, 2});
  auto [q, r] = divmod(a, b);
  CHECK(r.degree() < b.degree());
  RationalPoly back = q * b;
  // a - q b == r
  CHECK(a - back == r);
}

TEST_CASE("gcd finds the common factor") {
  // (x - 1)(x + 2) and (x - 1)(x - 3)
  RationalPoly a(Polynomial{-2, 1, 1});
  RationalPoly b(Polynomial{3, -4, 1});
  CHECK(gcd(a, b) == RationalPoly(Polynomial{-1, 1}));
  CHECK(gcd(a, RationalPoly(Polynomial{1, 0, 1})) == RationalPoly(Polynomial{1}));
}

TEST_CASE("Sturm counts match known roots") {
  // (x - 1/2)(x - 1)(x - 3) = x^3 - 4.5 x^2 + 5 x - 1.5, scaled by 2
  RationalPoly p(Polynomial{-3, 10, -9, 2});
  SturmSequence s(p);
  CHECK(s.count_roots(Rational(0), Rational(4)) == 3);
  CHECK(s.count_roots(Rational(0), Rational(1, 2)) == 1);  // (lo, hi] includes 1/2
  CHECK(s.count_roots(Rational(1, 2), Rational(1)) == 1);
  CHECK(s.count_roots(Rational(1), Rational(2)) == 0);
  CHECK(s.count_roots(Rational(-10), Rational(0)) == 0);
  // double root counted once
  SturmSequence sq(RationalPoly(Polynomial{1, -2, 1}));
  CHECK(sq.count_roots(Rational(0), Rational(2)) == 1);
}

TEST_CASE("interval evaluation encloses point values") {
  RationalPoly p(Polynomial{-1, 1, 1});
  RationalInterval x{Rational(3, 5), Rational(16, 25)};
  auto y = evaluate(p, x);
  for (int k = 0; k <= 10; ++k) {
    Rational t = x.lo + (x.hi - x.lo) * Rational(k, 10);
    Rational v = p(t);
    CHECK(y.lo <= v);
    CHECK(v <= y.hi);
  }
  CHECK(y.contains_zero());
}
