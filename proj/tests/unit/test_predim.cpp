#include <cmath>

#include "doctest.h"
#include "shrinkdim/errors.hpp"
#include "shrinkdim/predim.hpp"

using namespace shrinkdim;

namespace {
// Roots of zeta(2s) = B^{s^2}, computed independently with mpmath.
constexpr double kRootB2 = 0.9254787365250165332746;
constexpr double kRootB4 = 0.7869640227730459820311;
constexpr double kRootB16 = 0.6723737190373779039061;
}  // namespace

TEST_CASE("level-one roots match the zeta oracle") {
  for (auto [B, root] : {std::pair{2.0, kRootB2}, {4.0, kRootB4}, {16.0, kRootB16}}) {
    CAPTURE(B);
    PredimRoot r = solve_predim(1, B, 1, std::nullopt, 20, 1e-7);
    CHECK(r.s.contains(root));
    CHECK(r.s.width() <= 1e-6);
  }
}

TEST_CASE("zero target uses the conventional values for the second and third roots") {
  PredimResult r = compute_predim(2, 4.0, std::nullopt);
  CHECK(r.s2.conventional);
  CHECK(r.s3.conventional);
  CHECK(r.branch == Branch::kCaseS1);
  CHECK(r.sn.lo == r.s1.s.lo);
  for (Verdict v : r.thresholds) CHECK(v != Verdict::kFail);
}

TEST_CASE("first-branch roots decrease with n for the zero target") {
  double prev = 1.0;
  for (int n = 1; n <= 4; ++n) {
    PredimResult r = compute_predim(n, 4.0, std::nullopt);
    CHECK(r.s1.s.lo > 0.5);
    CHECK(r.s1.s.width() <= 1e-3);
    CHECK(r.s1.s.hi < prev);
    prev = r.s1.s.hi;
  }
}

TEST_CASE("golden target selects a branch consistent with the threshold test") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    PredimResult r = compute_predim(n, 4.0, Digit(1));
    CHECK(r.a1z == Digit(1));
    CHECK(r.s1.s.lo > 0.5);
    for (Verdict v : r.thresholds) CHECK(v != Verdict::kFail);
    if (r.branch == Branch::kCaseS1) CHECK(r.sn.lo == r.s1.s.lo);
  }
}

TEST_CASE("branch selection") {
  Selection a = select_sn({0.6, 0.61}, {0.7, 0.71}, {0.65, 0.66});
  CHECK(a.branch == Branch::kCaseS1);
  Selection b = select_sn({0.8, 0.81}, {0.7, 0.71}, {0.75, 0.76});
  CHECK(b.branch == Branch::kCaseMaxS2S3);
  CHECK(b.sn.lo == 0.75);
  CHECK_THROWS_AS(select_sn({0.6, 0.7}, {0.65, 0.75}, {0.5, 0.6}), AmbiguousBranch);
}

TEST_CASE("f_m iteration") {
  CHECK(f_m_iterate(1, 0.7) == doctest::Approx(0.7));
  double f2 = 0.7 * 0.7 / (1 - 0.7 + 0.7);
  CHECK(f_m_iterate(2, 0.7) == doctest::Approx(f2));
  CHECK(f_m_iterate(1, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("window trajectory keeps a running maximum") {
  SstarEstimate e = sstar_estimate(TargetSpec::zero(), 4.0, 1, 3);
  REQUIRE(e.per_n.size() == 3);
  for (std::size_t i = 1; i < 3; ++i) CHECK(e.running_max_hi[i] >= e.running_max_hi[i - 1]);
  CHECK(e.running_max_hi.back() == e.per_n[0]->sn.hi);
}

TEST_CASE("default cutoff") {
  CHECK(default_cutoff(1) == 20);
  CHECK(default_cutoff(6) == 20);
  CHECK(default_cutoff(8) < 20);
}
