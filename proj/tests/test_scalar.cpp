#include <doctest.h>

#include "helpers.hpp"
#include "shorted/generators.hpp"

using namespace testing;

TEST_CASE("rational text form round trips") {
  for (const char* s : {"0/1", "1/2", "-3/1", "1/2+1/3i", "-5/7-2/9i", "0/1+1/1i", "0/1-1/4i"})
    CHECK(q(s).to_string() == s);
  CHECK(q("2/4").to_string() == "1/2");
  CHECK(q("1/2+i") == Rational(mpq_class(1, 2), mpq_class(1)));
  CHECK(q("1/2-i") == Rational(mpq_class(1, 2), mpq_class(-1)));
  CHECK(q("+3/1") == Rational(3));
}

TEST_CASE("rational parse rejects malformed text") {
  for (const char* s : {"", "1", "1/0", "1/2+", "1/2+1/3", "1/2x", "a/b", "1/2+1/0i", "1//2", " 1/2"}) {
    CAPTURE(s);
    CHECK_THROWS_AS(q(s), Error);
  }
}

TEST_CASE("gaussian rational arithmetic is exact") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const Rational a = draw_entry<Rational>(rng);
    const Rational b = draw_entry<Rational>(rng);
    CHECK((a + b) - b == a);
    CHECK(conj(conj(a)) == a);
    CHECK(a * b == b * a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(abs2(a) == (a * conj(a)).re());
  }
  CHECK(q("0/1+1/1i") * q("0/1+1/1i") == Rational(-1));
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("to_float converts exactly representable values") {
  const MatQ m = (MatQ(1, 2) << q("1/2+1/4i"), q("-3/1")).finished();
  const MatC f = to_float(m);
  CHECK(f(0, 0) == Complex(0.5, 0.25));
  CHECK(f(0, 1) == Complex(-3.0, 0.0));
}
