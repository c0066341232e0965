#include <doctest.h>

#include "kslat/scalar.hpp"

using namespace kslat;

TEST_CASE("rational recognition by continued fractions") {
  Rational q;
  REQUIRE(recognize_rational(1.0 / 3.0, &q));
  CHECK(q == Rational(1, 3));
  REQUIRE(recognize_rational(-0.625, &q));
  CHECK(q == Rational(-5, 8));
  REQUIRE(recognize_rational(7.0, &q));
  CHECK(q == 7);
  // sqrt(2) has no small-denominator approximant within 1e-9
  CHECK_FALSE(recognize_rational(1.4142135623730951, &q, 1000, 1e-9));
}

TEST_CASE("squarefree reduction") {
  Rational scale(1);
  CHECK(squarefree_reduce(12, &scale) == 3);
  CHECK(scale == 2);
  scale = 1;
  CHECK(squarefree_reduce(2, &scale) == 2);
  CHECK(scale == 1);
  scale = 1;
  CHECK(squarefree_reduce(49, &scale) == 1);
  CHECK(scale == 7);
}

TEST_CASE("surd arithmetic stays in the field") {
  Surd a(Rational(1), Rational(1), 2);   // 1 + sqrt(2)
  Surd b(Rational(3), Rational(-2), 2);  // 3 - 2 sqrt(2)
  CHECK((a + b) == Surd(Rational(4), Rational(-1), 2));
  // (1 + sqrt 2)(3 - 2 sqrt 2) = 3 - 2 sqrt 2 + 3 sqrt 2 - 4 = -1 + sqrt 2
  CHECK((a * b) == Surd(Rational(-1), Rational(1), 2));
  // 1 / (1 + sqrt 2) = sqrt 2 - 1
  CHECK((Surd(1) / a) == Surd(Rational(-1), Rational(1), 2));
  CHECK((a - a).is_zero());
  CHECK(a.to_double() == doctest::Approx(1 + std::sqrt(2.0)));
}

TEST_CASE("exact sign and ordering without square roots") {
  Surd x(Rational(3), Rational(-2), 2);  // 3 - 2 sqrt 2 = 0.17... > 0
  CHECK(x.sign() == 1);
  Surd y(Rational(2), Rational(-2), 2);  // 2 - 2 sqrt 2 < 0
  CHECK(y.sign() == -1);
  CHECK(y < x);
  CHECK(Surd(0).sign() == 0);
  CHECK(abs(y) == -y);
}

TEST_CASE("mixed radicands are rejected") {
  Surd a = Surd::sqrt_of(2);
  Surd b = Surd::sqrt_of(3);
  CHECK_THROWS_AS(a + b, IncompatibleSurd);
  CHECK_NOTHROW(a + Surd(5));  // rationals embed into any Q(sqrt r)
}

TEST_CASE("surd normalization keeps invariants") {
  // sqrt(8) should normalize radicand 8 -> 2 with coefficient 2
  Surd s(Rational(0), Rational(1), 8);
  CHECK(s.radicand() == 2);
  CHECK(s.surd_part() == 2);
  // zero coefficient drops the radicand entirely
  Surd z(Rational(5), Rational(0), 2);
  CHECK(z.radicand() == 0);
  CHECK(z.is_rational());
}

TEST_CASE("exact complex scalars") {
  XComplex i(Surd(0), Surd(1));
  CHECK((i * i) == XComplex(Surd(-1)));
  XComplex z(Surd(Rational(1), Rational(1), 2), Surd(2));
  CHECK(z.conj().im == Surd(-2));
  CHECK(z.norm2().sign() == 1);
  CHECK((z * z.conj()) == XComplex(z.norm2()));
  XComplex w = z / z;
  CHECK(w == XComplex(Surd(1)));
}

TEST_CASE("surd printing is canonical") {
  CHECK(Surd(Rational(-1, 2)).str() == "-1/2");
  CHECK(Surd(Rational(1), Rational(-2), 2).str() == "1-2*sqrt(2)");
  CHECK(Surd::sqrt_of(3).str() == "sqrt(3)");
}
