#include <cmath>

#include "doctest.h"
#include "shrinkdim/errors.hpp"
#include "shrinkdim/targets.hpp"

using namespace shrinkdim;

TEST_CASE("zero target has no first digit") {
  TargetSpec z = TargetSpec::zero();
  CHECK_FALSE(z.a1(1).has_value());
  CHECK(z.digits_at(3).is_zero());
}

TEST_CASE("golden target digits and value") {
  TargetSpec g = TargetSpec::golden();
  CHECK(g.a1(5) == Digit(1));
  DigitSeq d = g.digits_at(2);
  CHECK(d.digit(100) == Digit(1));
  RationalInterval v = d.value(40);
  double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(v.lo.get_d() <= phi + 1e-15);
  CHECK(v.hi.get_d() >= phi - 1e-15);
  CHECK(v.width() < Rational(1, 1000000));
}

TEST_CASE("finite expansions are canonical") {
  DigitSeq a = DigitSeq::finite(Word{2, 1});
  CHECK(a.prefix == Word{3});
  CHECK(a.value(10).is_exact());
  CHECK(a.value(10).lo == Rational(1, 3));
  CHECK(DigitSeq::of_rational(Rational(7, 23)).prefix == Word{3, 3, 2});
}

TEST_CASE("parsing target grammar") {
  CHECK(TargetSpec::parse("zero").family == TargetFamily::kZero);
  CHECK(TargetSpec::parse("const:2|1").a1(1) == Digit(2));
  TargetSpec p = TargetSpec::parse("periodic:2/3");
  CHECK(p.a1(1) == Digit(2));
  CHECK(p.a1(2) == Digit(3));
  CHECK(p.a1(3) == Digit(2));
  TargetSpec e = TargetSpec::parse("exp:halflogB:1", 4.0);
  CHECK(e.gamma == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(TargetSpec::parse("exp:halflogB"), InvalidArgument);
  CHECK_THROWS_AS(TargetSpec::parse("bogus"), InvalidArgument);
}

TEST_CASE("exponential first digit grows at the requested rate") {
  TargetSpec e = TargetSpec::exp_first_digit(std::log(2.0), Word{1});
  for (std::size_t n = 1; n <= 20; ++n) {
    Digit a = *e.a1(n);
    CHECK(a >= 1);
    CHECK(std::abs(std::log(static_cast<double>(a)) - std::log(2.0) * n) <= std::log(2.0) + 1e-9);
  }
  GrowthRate g = alpha_beta(e, 10, 30);
  CHECK(g.alpha_hat == doctest::Approx(std::log(2.0)).epsilon(0.05));
}

TEST_CASE("z_value reports Tz exactly for rational targets") {
  TargetValue v = z_value(TargetSpec::parse("const:3,2"), 1);
  CHECK(v.a1 == Digit(3));
  CHECK(v.z.lo == Rational(2, 7));
  CHECK(v.tz.lo == Rational(1, 2));
}
