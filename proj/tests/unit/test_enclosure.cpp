#include <cmath>
#include <random>

#include "doctest.h"
#include "shrinkdim/enclosure.hpp"

using namespace shrinkdim;

TEST_CASE("arithmetic encloses the exact result") {
  Enclosure third = Enclosure::point(1.0) / Enclosure::point(3.0);
  CHECK(third.lo < third.hi);
  CHECK(third.lo * 3.0 <= 1.0);
  CHECK(third.hi * 3.0 >= 1.0);
  Enclosure s = Enclosure::point(0.1) + Enclosure::point(0.2);
  CHECK(s.contains(0.30000000000000004));
  CHECK(s.width() > 0.0);
}

TEST_CASE("transcendental functions contain reference values") {
  CHECK(exp(Enclosure::point(1.0)).contains(M_E));
  CHECK(log(Enclosure::point(2.0)).contains(M_LN2));
  CHECK(sqrt(Enclosure::point(2.0)).contains(M_SQRT2));
  Enclosure p = pow_exact_base(4.0, 0.5);
  CHECK(p.lo <= 2.0);
  CHECK(p.hi >= 2.0);
}

TEST_CASE("interval operations are monotone in their operands") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    double a = u(rng), b = u(rng);
    Enclosure A = Enclosure::hull(a, a * 1.01), Bv = Enclosure::hull(b, b * 1.02);
    Enclosure prod = A * Bv, quot = A / Bv, diff = A - Bv;
    CHECK(prod.contains(a * b));
    CHECK(quot.contains(a * 1.01 / b));
    CHECK(diff.contains(a - b * 1.02));
    CHECK(sqr(A).lo >= 0.0);
  }
}

TEST_CASE("rational conversion rounds outward") {
  mpq_class third(1, 3);
  Enclosure e = to_enclosure(third);
  CHECK(e.lo < e.hi);
  CHECK(mpq_class(e.lo) <= third);
  CHECK(mpq_class(e.hi) >= third);
  CHECK(to_enclosure(mpq_class(1, 4)).is_point());
}

TEST_CASE("certified comparisons") {
  CHECK(certainly_lt(Enclosure{0.0, 1.0}, Enclosure{1.5, 2.0}));
  CHECK_FALSE(certainly_lt(Enclosure{0.0, 1.0}, Enclosure{0.5, 2.0}));
  CHECK(certainly_le(Enclosure{0.0, 1.0}, Enclosure{1.0, 2.0}));
}
