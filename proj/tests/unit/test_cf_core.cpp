#include "doctest.h"
#include "shrinkdim/cf_core.hpp"
#include "shrinkdim/errors.hpp"

using namespace shrinkdim;

TEST_CASE("gauss map on rationals") {
  CHECK(gauss_step(Rational(7, 23)) == Rational(2, 7));
  CHECK(gauss_iterate(Rational(7, 23), 3) == 0);
  CHECK(gauss_step(Rational(0)) == 0);
}

TEST_CASE("expansion round-trips through evaluation") {
  Word w = expand(Rational(7, 23), 100);
  CHECK(w == Word{3, 3, 2});
  CHECK(eval_word(w, Rational(0)) == Rational(7, 23));
  Rational x(355, 113);
  x -= 3;
  Word v = expand(x, 100);
  CHECK(eval_word(v, Rational(0)) == x);
}

TEST_CASE("continuants and determinant identity") {
  Continuants k(Word{1, 2, 3, 4});
  CHECK(k.q(0) == 1);
  CHECK(k.q(1) == 1);
  CHECK(k.q(2) == 3);
  CHECK(k.q(3) == 10);
  CHECK(k.q(4) == 43);
  CHECK(k.p(4) == 30);
  CHECK(k.p(3) * k.q(4) - k.p(4) * k.q(3) == 1);
  CHECK(q_of(Word{}) == 1);
}

TEST_CASE("cylinder endpoints follow parity") {
  CylinderInterval odd = cylinder(Word{3});
  CHECK(odd.left == Rational(1, 4));
  CHECK(odd.right == Rational(1, 3));
  CHECK_FALSE(odd.left_closed);
  CHECK(odd.right_closed);
  CHECK(odd.contains(Rational(1, 3)));
  CHECK_FALSE(odd.contains(Rational(1, 4)));

  CylinderInterval even = cylinder(Word{2, 1});
  CHECK(even.left == Rational(1, 3));
  CHECK(even.right == Rational(2, 5));
  CHECK(even.contains(Rational(1, 3)));
  CHECK(even.length() == Rational(1, 15));
}

TEST_CASE("relative position of sibling cylinders") {
  CHECK(compare_cylinders(Word{}, 1, 2) == Side::kRight);
  CHECK(compare_cylinders(Word{1}, 1, 2) == Side::kLeft);
}

TEST_CASE("parsing rationals") {
  CHECK(parse_rational("3/12") == Rational(1, 4));
  CHECK(parse_rational("5") == Rational(5));
  CHECK(to_string(Rational(3, 7)) == "3/7");
  CHECK_THROWS_AS(parse_rational("abc"), InvalidArgument);
}
