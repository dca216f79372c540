#include <cmath>

#include "doctest.h"
#include "shrinkdim/errors.hpp"
#include "shrinkdim/pressure.hpp"
#include "shrinkdim/predim.hpp"

using namespace shrinkdim;

namespace {
Alphabet range(int k) {
  Alphabet a;
  for (int d = 1; d <= k; ++d) a.push_back(static_cast<Digit>(d));
  return a;
}
}  // namespace

TEST_CASE("sigma at level one is a finite zeta sum") {
  SigmaValue v = continuant_sigma(range(5), 1, 0.75, 0.0);
  double direct = 0.0;
  for (int a = 1; a <= 5; ++a) direct += std::pow(a, -1.5);
  CHECK(v.bound.contains(direct));
}

TEST_CASE("sigma at x = 1 is smaller than at x = 0") {
  SigmaValue zero = continuant_sigma(range(6), 4, 0.8, 0.0);
  SigmaValue one = continuant_sigma(range(6), 4, 0.8, 1.0);
  CHECK(one.bound.hi < zero.bound.lo);
}

TEST_CASE("single-digit alphabet has the golden-mean pressure") {
  // Words 1^n have q_n ~ phi^n / sqrt 5, so P(-s log|T'|) = -2 s log phi.
  PotentialSpec phi;
  phi.kind = PotentialKind::kPhi1;
  phi.B = 1.0 + 1e-12;
  phi.s = 0.5;
  PressureEstimate e = pressure_estimate(phi, Alphabet{1}, 12);
  double expected = -std::log((1.0 + std::sqrt(5.0)) / 2.0);
  CHECK(e.extrapolated == doctest::Approx(expected).epsilon(1e-4));
  CHECK(e.bracket.contains(expected));
}

TEST_CASE("pressure bracket contains the extrapolated estimate") {
  PotentialSpec phi;
  phi.B = 4.0;
  phi.s = 0.7;
  PressureEstimate e = pressure_estimate(phi, range(10), 6);
  CHECK(e.bracket.lo <= e.extrapolated);
  CHECK(e.extrapolated <= e.bracket.hi);
  CHECK_FALSE(e.certified);
}

TEST_CASE("pressure root lies in the certified bracket") {
  PotentialSpec phi;
  phi.B = 4.0;
  PressureRoot r = pressure_root(phi, range(20), 6, 1e-4);
  CHECK(r.certified.lo <= r.estimate.lo);
  CHECK(r.estimate.hi <= r.certified.hi);
  CHECK(r.estimate.width() <= 1e-4);
  // Finite alphabet roots stay below the full-system level-one root.
  CHECK(r.estimate.hi < 0.7869640227730459820311);
}

TEST_CASE("potential constants") {
  PotentialSpec phi;
  phi.B = 4.0;
  phi.kind = PotentialKind::kPhi1;
  CHECK(phi.constant(0.5).contains(-0.25 * std::log(4.0)));
  phi.kind = PotentialKind::kPhi2;
  phi.alpha = 0.3;
  CHECK(phi.constant(0.5).contains(-0.5 * std::log(4.0) + 0.15));
  phi.kind = PotentialKind::kEm;
  phi.m = 1;
  CHECK(phi.constant(0.5).contains(-0.5 * std::log(4.0)));
}

TEST_CASE("variation is finite and shrinks with level") {
  PotentialSpec phi;
  phi.B = 4.0;
  phi.s = 0.7;
  double v1 = variation_check(phi, 1, range(5));
  double v3 = variation_check(phi, 3, range(5));
  CHECK(std::isfinite(v1));
  CHECK(v3 <= v1);
}

TEST_CASE("alphabet infimum") {
  CHECK(alphabet_infimum(Alphabet{1}) == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0));
  double v = alphabet_infimum(range(3));
  CHECK(v > 1.0 / 4.0);
  CHECK(v < 1.0 / 3.0);
}

TEST_CASE("m = 1 dimension agrees with the level-one zeta root scale") {
  Enclosure e = em_dimension(1, 4.0, 20, 6, 1e-4);
  CHECK(e.lo > 0.5);
  CHECK(e.hi < 1.0);
}
