#include <cmath>

#include "doctest.h"
#include "shrinkdim/errors.hpp"
#include "shrinkdim/shrink.hpp"

using namespace shrinkdim;

TEST_CASE("base power inverse is exact") {
  CHECK(base_power_inv(4.0, 3) == Rational(1, 64));
  CHECK(base_power_inv(2.5, 2) == Rational(4, 25));
}

TEST_CASE("membership against the zero target") {
  // T(7/23) = 2/7, T^2(7/23) = 1/2: product 1/7 < 1/4.
  CHECK(membership(Rational(7, 23), TargetSpec::zero(), 4.0, 1));
  // x = 2/5: T x = 1/2, T^2 x = 0.
  CHECK(membership(Rational(2, 5), TargetSpec::zero(), 4.0, 1));
  // x = 3/4: T x = 1/3, T^2 x = 0, product 0.
  CHECK(membership(Rational(3, 4), TargetSpec::zero(), 100.0, 1));
  // x = 3/5 = [1; 1, 2]: T x = 2/3, T^2 x = 1/2, product 1/3 > 1/4.
  CHECK_FALSE(membership(Rational(3, 5), TargetSpec::zero(), 4.0, 1));
}

TEST_CASE("a point equal to a constant target hits at every level") {
  TargetSpec g = TargetSpec::golden();
  for (int n = 1; n <= 8; ++n) CHECK(membership_verdict(g.digits_at(1), g, 4.0, n) == Tri::kTrue);
  HitReport h = hit_times(g.digits_at(1), g, 4.0, 8);
  CHECK(h.hits.size() == 8);
  CHECK(h.inconclusive.empty());
}

TEST_CASE("membership is monotone in the base") {
  TargetSpec z = TargetSpec::parse("const:2,3");
  for (long num = 1; num < 60; ++num) {
    Rational x(num, 61);
    for (int n = 1; n <= 3; ++n) {
      if (membership(x, z, 8.0, n)) CHECK(membership(x, z, 2.0, n));
    }
  }
}

TEST_CASE("distance identity on exact rationals") {
  IdentityResult r = identity_check(Rational(7, 23), Rational(3, 11), 2);
  CHECK(r.equal());
  CHECK(r.lhs == Rational(5, 22));
  CHECK_THROWS_AS(identity_check(Rational(7, 23), Rational(3, 11), 3), InvalidArgument);
}

TEST_CASE("equal-digit J interval bounds") {
  // prefix (1,1), a_{n+1} = a1(z) = 2, B = 4, n = 2.
  JIntervalBound b = j_interval_bounds(Word{1, 1}, 2, std::optional<Digit>(2), 4.0, 2);
  CHECK(b.kind == JCase::kEqual);
  CHECK(b.upper_len.contains(1.0 / 16.0));
  CHECK(b.lower_len.contains(1.0 / 128.0));
}

TEST_CASE("J interval bounds need a first digit") {
  CHECK_THROWS_AS(j_interval_bounds(Word{1}, 2, std::nullopt, 4.0, 1), Inapplicable);
}

TEST_CASE("exact J solutions sit inside the far-case bounds") {
  Word prefix{2, 3};
  Digit A = 40, b = 3;
  JIntervalBound bound = j_interval_bounds(prefix, b, std::optional<Digit>(A), 4.0, 2);
  CHECK(bound.kind == JCase::kFar);
  for (Rational tz : {Rational(0), Rational(1, 3), Rational(5, 7)}) {
    JSolution sol = solve_j(prefix, b, std::optional<Digit>(A), tz, 4.0);
    REQUIRE_FALSE(sol.empty());
    CHECK(to_enclosure(sol.hull_max).hi <= bound.upper_len.lo);
    CHECK(to_enclosure(sol.longest_min).lo >= bound.lower_len.hi);
    CHECK(sol.hull_min <= sol.hull_max);
  }
}

TEST_CASE("cover pieces contain sampled members") {
  Word prefix{1, 2};
  Digit a_next = 5;
  std::optional<Digit> a1z = 7;
  Rational tz(2, 9);
  TargetSpec spec = TargetSpec::parse("const:7,4,2");
  REQUIRE(spec.a1(2) == a1z);
  auto pieces = cover_pieces(prefix, a_next, a1z, tz, 4.0);
  Word full = prefix;
  full.push_back(a_next);
  CylinderInterval cyl = cylinder(full);
  int members = 0;
  for (int i = 1; i < 400; ++i) {
    Rational x = cyl.left + cyl.length() * Rational(i, 400);
    if (!membership(x, spec, 4.0, 2)) continue;
    ++members;
    bool covered = false;
    for (const auto& [l, r] : pieces) covered = covered || (l <= x && x <= r);
    CHECK(covered);
  }
  CHECK(members > 0);
}

TEST_CASE("cover volumes shrink above the first root and grow below it") {
  TargetSpec z = TargetSpec::zero();
  std::vector<int> ns{2, 3, 4};
  std::vector<PredimResult> pre;
  double top = 0.0, bottom = 1.0;
  for (int n : ns) {
    pre.push_back(compute_predim(n, 4.0, std::nullopt));
    top = std::max(top, pre.back().s1.s.hi);
    bottom = std::min(bottom, pre.back().s1.s.lo);
  }
  std::vector<double> above, below;
  for (const auto& p : pre) {
    above.push_back(cover_svolume(p, z, top + 0.05, 20).total.mid());
    below.push_back(cover_svolume(p, z, bottom - 0.05, 20).total.mid());
  }
  CHECK(fit_decay(ns, above).slope < -0.1);
  CHECK(fit_decay(ns, below).slope > 0.0);
  for (std::size_t i = 1; i < ns.size(); ++i) {
    CHECK(above[i] < above[i - 1]);
    CHECK(below[i] >= below[i - 1]);
  }
}

TEST_CASE("fit decay recovers an exact slope") {
  DecayFit f = fit_decay({1, 2, 3, 4}, {8.0, 4.0, 2.0, 1.0});
  CHECK(f.slope == doctest::Approx(-1.0));
  CHECK(f.intercept == doctest::Approx(4.0));
}
