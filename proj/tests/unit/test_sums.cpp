#include <cmath>

#include "doctest.h"
#include "shrinkdim/errors.hpp"
#include "shrinkdim/sums.hpp"

using namespace shrinkdim;

namespace {
// Independent reference values computed with mpmath at 30 digits.
constexpr double kZeta15 = 2.612375348685488343348568;         // zeta(3/2)
constexpr double kInvSquareShifted = 0.2898681336964528729448;  // sum_{b>=2} 1/(b^2 (b-1)^2)

struct LemmaRow {
  Digit a;
  double t06, t075, t1;
};
constexpr LemmaRow kLemmaTable[] = {
    {1, 5.0163379025901478735, 2.0109381287137384517, 1.0},
    {2, 8.6557965181479521269, 4.5887944082076411245, 3.5},
    {10, 21.918854353756815905, 12.164904885096221047, 8.5869047619047619048},
    {100, 63.951254916018574188, 29.70947461380904795, 15.542132552918860782},
    {1000, 169.49848551475112248, 60.870642241971121736, 22.454412581651034738},
};
}  // namespace

TEST_CASE("zeta enclosure contains zeta(3/2)") {
  Enclosure z = zeta_enclosure(0.75, 1000);
  CHECK(z.contains(kZeta15));
  CHECK(z.width() < 1e-6);
}

TEST_CASE("zeta tail brackets the remaining sum") {
  Enclosure tail = zeta_tail(1.0, 1);
  double expected = M_PI * M_PI / 6.0 - 1.0;
  CHECK(tail.contains(expected));
}

TEST_CASE("lemma sum matches the reference table") {
  for (const auto& row : kLemmaTable) {
    CAPTURE(row.a);
    std::uint64_t cutoff = std::max<std::uint64_t>(4 * row.a, 16384);
    CHECK(lemma_sum(row.a, 0.6, cutoff).contains(row.t06));
    CHECK(lemma_sum(row.a, 0.75, cutoff).contains(row.t075));
    CHECK(lemma_sum(row.a, 1.0, cutoff).contains(row.t1));
  }
}

TEST_CASE("lemma sum at a = 1, t = 1 telescopes to one") {
  Enclosure e = lemma_sum(1, 1.0, 16384);
  CHECK(e.contains(1.0));
  CHECK(e.width() <= 1e-10);
  // a = 1, t = 2 is the shifted inverse-square sum.
  CHECK(lemma_sum(1, 2.0, 16384).contains(kInvSquareShifted));
}

TEST_CASE("lemma sum rejects bad arguments") {
  CHECK_THROWS_AS(lemma_sum(0, 1.0, 100), InvalidArgument);
  CHECK_THROWS_AS(lemma_sum(2, 0.5, 100), ExponentTooSmall);
  CHECK_THROWS_AS(lemma_sum(100, 1.0, 100), InvalidArgument);
}

TEST_CASE("level-one continuant sum is zeta(2s)") {
  Enclosure e = continuant_power_sum(1, 0.75, 20);
  CHECK(e.contains(kZeta15));
  Enclosure h = head_power_sum(1, 0.75, 20);
  CHECK(h.hi < e.lo + 1e-12);
}

TEST_CASE("continuant sums are decreasing in s and enclose the head") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    Enclosure a = continuant_power_sum(n, 0.7, 20);
    Enclosure b = continuant_power_sum(n, 0.8, 20);
    CHECK(certainly_lt(b, a));
    CHECK(head_power_sum(n, 0.7, 20).hi <= a.hi);
  }
}

TEST_CASE("histogram counts every word") {
  auto h = ContinuantHistogram::get(3, 10);
  CHECK(h->words() == 1000);
  std::uint64_t total = 0;
  for (const auto& bin : h->bins()) {
    CHECK(bin.lo <= bin.hi);
    total += bin.count;
  }
  CHECK(total == 1000);
  Enclosure direct = head_power_sum(3, 0.9, 10);
  CHECK(h->power_sum(0.9).contains(direct.mid()));
}

TEST_CASE("weights multiply the sum") {
  WeightSpec w{WeightKind::kPre1, 4.0, 1, std::nullopt};
  Enclosure f = w.factor(0.5);
  CHECK(f.contains(std::pow(4.0, -0.25)));
  WeightSpec bad{WeightKind::kPre2, 4.0, 1, std::nullopt};
  CHECK_THROWS(bad.factor(0.7));
}

TEST_CASE("exponent near one half is rejected") {
  CHECK_THROWS_AS(continuant_power_sum(2, 0.505, 20), ExponentTooSmall);
}
