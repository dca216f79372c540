#include <cmath>

#include "doctest.h"
#include "shrinkdim/errors.hpp"
#include "shrinkdim/massdist.hpp"
#include "shrinkdim/predim.hpp"
#include "shrinkdim/shrink.hpp"

using namespace shrinkdim;

TEST_CASE("finite-alphabet exponent for block length two") {
  // Root of sum over {1,2,3}^2 of q^{-2s} 4^{-2 s^2} = 1, from an exact bisection.
  Enclosure s = solve_finite_s(WitnessCase::kI, 2, 3, 4.0, 0.0);
  CHECK(s.contains(0.5220791998322338));
  CHECK(s.width() < 1e-11);
}

TEST_CASE("finite-alphabet exponent grows with the alphabet") {
  CHECK_THROWS_AS(solve_finite_s(WitnessCase::kI, 1, 1, 4.0, 0.0), NoRoot);
  double prev = 0.0;
  for (int M : {2, 5, 20, 100}) {
    Enclosure s = solve_finite_s(WitnessCase::kI, 1, M, 4.0, 0.0);
    CHECK(s.lo > prev);
    prev = s.hi;
  }
}

TEST_CASE("finite-alphabet exponent equals the head-only level root") {
  Enclosure s = solve_finite_s(WitnessCase::kI, 1, 20, 4.0, 0.0);
  SumOptions opt;
  opt.head_only = true;
  PredimRoot r = solve_predim(1, 4.0, 1, std::nullopt, 20, 1e-8, opt);
  CHECK(r.s.lo <= s.hi);
  CHECK(s.lo <= r.s.hi);
}

TEST_CASE("witness parameters derive m and ell0") {
  WitnessParams p;
  CHECK(p.k() == 1);
  CHECK(p.m() == 2);
  CHECK(p.ell0() == 0);
  CHECK(p.u_tilde() == Word{1});
  p.n = 6;
  CHECK(p.ell0() == 1);
  CHECK(p.u_tilde() == (Word{1, 1}));
}

TEST_CASE("default witness satisfies every check") {
  Witness w = build_witness(WitnessParams{});
  for (const auto& c : w.checks) {
    CAPTURE(c.name);
    CHECK(c.holds);
  }
  CHECK(w.intervals.size() == 81);
  CHECK(std::abs(w.total_mass() - 1.0) <= 1e-9);
  for (std::size_t i = 1; i < w.intervals.size(); ++i) CHECK(w.intervals[i - 1].right < w.intervals[i].left);

  MembershipReport mr = membership_samples(w);
  CHECK(mr.samples == 810);
  CHECK(mr.failures == 0);
  CHECK(mr.inconclusive == 0);

  GapReport g = gap_check(w);
  CHECK(g.pass());
  CHECK(g.pairs > 0);

  MeasureBoundReport mb = measure_bounds(w);
  CHECK(mb.pass());
  CHECK(mb.interval_constant <= 64.0);

  HolderReport h = holder_check(w, holder_samples(w, 500, 3));
  CHECK(h.pass());
  CHECK(h.max_ratio <= h.refined_constant);

  ContentBound cb = content_lower_bound(w, h);
  CHECK(cb.bound >= cb.explicit_form);
  CHECK(cb.empirical >= cb.bound);
}

TEST_CASE("measures of nested cylinders add up") {
  Witness w = build_witness(WitnessParams{});
  const int ell = w.params.ell;
  double root = measure_of(w, Word{});
  CHECK(root == doctest::Approx(1.0));
  double sum = 0.0;
  for (Digit a = 1; a <= 3; ++a)
    for (Digit b = 1; b <= 3; ++b) sum += measure_of(w, Word{a, b});
  CHECK(sum == doctest::Approx(1.0));
  CHECK(ell == 2);
  Rational big(10);
  CHECK(measure_of_ball(w, Rational(1, 2), big) == doctest::Approx(w.total_mass()));
}

TEST_CASE("guaranteed core intervals lie inside the exact ones") {
  WitnessParams p;
  Witness exact = build_witness(p);
  p.exact_solving = false;
  Witness core = build_witness(p);
  REQUIRE(core.intervals.size() == exact.intervals.size());
  for (std::size_t i = 0; i < core.intervals.size(); ++i) {
    CHECK(core.intervals[i].left >= exact.intervals[i].left);
    CHECK(core.intervals[i].right <= exact.intervals[i].right);
  }
  CHECK(gap_check(core).pass());
}

TEST_CASE("violated parameters are reported") {
  WitnessParams p;
  p.eps = 0.1;
  CHECK_THROWS_AS(build_witness(p), ParameterViolation);
  p.override_asymptotic = true;
  Witness w = build_witness(p);
  bool any_failed = false;
  for (const auto& c : w.checks) any_failed = any_failed || !c.holds;
  CHECK(any_failed);
}

TEST_CASE("witness case names round-trip") {
  for (auto c : {WitnessCase::kI, WitnessCase::kII, WitnessCase::kIII})
    CHECK(parse_witness_case(witness_case_name(c)) == c);
  CHECK_THROWS(parse_witness_case("IV"));
}
