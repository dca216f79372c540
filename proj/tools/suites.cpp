#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "shrinkdim/errors.hpp"
#include "shrinkdim/parallel.hpp"
#include "shrinkdim/shrink.hpp"
#include "shrinkdim/sums.hpp"

namespace shrinkdim::cli {

namespace {

std::string short_num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Word random_word(std::mt19937_64& rng, int len, int max_digit) {
  std::uniform_int_distribution<Digit> digit(1, static_cast<Digit>(max_digit));
  Word w(static_cast<std::size_t>(len));
  for (auto& d : w) d = digit(rng);
  return w;
}

Rational random_unit_rational(std::mt19937_64& rng, long max_den, bool allow_zero) {
  std::uniform_int_distribution<long> den_dist(2, max_den);
  long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(allow_zero ? 0 : 1, den - 1);
  Rational q(num_dist(rng), den);
  q.canonicalize();
  return q;
}

struct Counter {
  std::size_t checks = 0, failures = 0;
  void expect(bool ok) {
    ++checks;
    if (!ok) ++failures;
  }
};

}  // namespace

SuiteResult cf_invariant_suite(std::size_t words, int max_len, int max_digit, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::vector<Word> ws(words);
  for (auto& w : ws) w = random_word(rng, len_dist(rng), max_digit);
  std::vector<Counter> counters(words);
  parallel_for(words, [&](std::size_t i) {
    const Word& w = ws[i];
    Counter& c = counters[i];
    int n = static_cast<int>(w.size());
    Continuants k(w);
    const BigInt& q = k.q(n);
    const BigInt& qp = k.q(n - 1);
    const BigInt& p = k.p(n);
    const BigInt& pp = k.p(n - 1);
    // q_n >= 2^{(n-1)/2}, i.e. q_n^2 >= 2^{n-1}
    c.expect(q * q >= (BigInt(1) << (n - 1)));
    BigInt prod_a = 1, prod_a1 = 1, prod_2a = 1;
    for (Digit d : w) {
      prod_a *= to_bigint(d);
      prod_a1 *= to_bigint(d) + 1;
      prod_2a *= 2 * to_bigint(d);
    }
    c.expect(prod_a <= q && q <= prod_a1 && prod_a1 <= prod_2a);
    c.expect(q <= (to_bigint(w.back()) + 1) * qp);
    for (int split = 1; split < n; ++split) {
      BigInt left = q_of(Word(w.begin(), w.begin() + split));
      BigInt right = q_of(Word(w.begin() + split, w.end()));
      c.expect(left * right <= q && q <= 2 * left * right);
    }
    for (int del = 0; del < n; ++del) {
      Word shorter = w;
      shorter.erase(shorter.begin() + del);
      BigInt qd = q_of(shorter);
      BigInt a1 = to_bigint(w[static_cast<std::size_t>(del)]) + 1;
      c.expect(a1 * qd <= 2 * q && q <= a1 * qd);
    }
    c.expect(pp * q - p * qp == (n % 2 == 0 ? 1 : -1));
    CylinderInterval cyl = cylinder(w);
    Rational a(p, q), b(p + pp, q + qp);
    a.canonicalize();
    b.canonicalize();
    if (n % 2 == 0) {
      c.expect(cyl.left == a && cyl.right == b && cyl.left_closed && !cyl.right_closed);
    } else {
      c.expect(cyl.left == b && cyl.right == a && !cyl.left_closed && cyl.right_closed);
    }
    Rational len = cyl.length();
    Rational exact_len(BigInt(1), q * (q + qp));
    exact_len.canonicalize();
    c.expect(len == exact_len);
    Rational q2(q * q);
    c.expect(len * q2 >= Rational(1, 2) && len * q2 <= 1);
  });
  SuiteResult r;
  r.name = "cf_invariants";
  for (const auto& c : counters) {
    r.checks += c.checks;
    r.failures += c.failures;
  }
  r.detail = std::to_string(words) + " words, length <= " + std::to_string(max_len) + ", digits <= " +
             std::to_string(max_digit);
  return r;
}

SuiteResult lemma_sum_suite(Digit a_max, const std::vector<double>& ts, std::vector<RatioRange>* ranges) {
  SuiteResult r;
  r.name = "lemma_sum_ratio";
  std::vector<RatioRange> out;
  for (double t : ts) {
    std::vector<Enclosure> ratio(a_max);
    parallel_for(a_max, [&](std::size_t i) {
      Digit a = i + 1;
      std::uint64_t cutoff = std::max<std::uint64_t>(4 * a, 16384);
      ratio[i] = lemma_sum(a, t, cutoff) / pow_exact_base(static_cast<double>(a), 1.0 - t);
    });
    RatioRange rr;
    rr.t = t;
    for (std::size_t i = 0; i < ratio.size(); ++i) {
      if (ratio[i].lo < rr.c1) {
        rr.c1 = ratio[i].lo;
        rr.argmin = i + 1;
      }
      if (ratio[i].hi > rr.c2) {
        rr.c2 = ratio[i].hi;
        rr.argmax = i + 1;
      }
    }
    ++r.checks;
    if (!(rr.c1 > 0.0 && std::isfinite(rr.c2))) ++r.failures;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += "t=" + short_num(t) + ": [" + short_num(rr.c1) + ", " + short_num(rr.c2) + "]";
    out.push_back(rr);
  }
  if (ranges) *ranges = out;
  return r;
}

SuiteResult identity_suite(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(1, 5);
  SuiteResult r;
  r.name = "identity";
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    Rational x = random_unit_rational(rng, 1000000, false);
    Rational z = random_unit_rational(rng, 1000, false);
    int n = level(rng);
    if (gauss_iterate(x, n) == 0) {
      ++skipped;
      continue;
    }
    ++r.checks;
    if (!identity_check(x, z, n).equal()) ++r.failures;
  }
  r.detail = std::to_string(skipped) + " samples skipped (T^n x = 0)";
  return r;
}

SuiteResult sandwich_suite(std::size_t samples, double B, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_dist(1, 6);
  std::uniform_int_distribution<Digit> big(1, 200);
  SuiteResult r;
  r.name = "j_interval_sandwich";
  std::size_t drawn = 0;
  while (r.checks < 2 * samples && drawn < 100 * samples) {
    ++drawn;
    int n = len_dist(rng);
    Word prefix = random_word(rng, n, 20);
    Digit A = big(rng), b = big(rng);
    Digit gap = A > b ? A - b : b - A;
    if (gap < 2) continue;
    Rational c = base_power_inv(B, n);
    if (8 * Rational(to_bigint(A)) * to_bigint(b) * c / to_bigint(gap) > 1) continue;
    Rational tz = random_unit_rational(rng, 1000, true);
    JIntervalBound bound = j_interval_bounds(prefix, b, std::optional<Digit>(A), B, n);
    JSolution sol = solve_j(prefix, b, std::optional<Digit>(A), tz, B);
    r.checks += 2;
    if (!(to_enclosure(sol.hull_max).hi <= bound.upper_len.lo)) ++r.failures;
    if (!(to_enclosure(sol.longest_min).lo >= bound.lower_len.hi)) ++r.failures;
  }
  r.detail = "B=" + short_num(B) + ", far case, " + std::to_string(r.checks / 2) + " cylinders";
  return r;
}

std::vector<GridOutcome> predim_grid(const std::vector<double>& Bs, const std::vector<std::string>& targets,
                                     int n_min, int n_max, const PredimOptions& opt) {
  std::vector<GridOutcome> out;
  for (double B : Bs) {
    for (const auto& t : targets) {
      TargetSpec spec = TargetSpec::parse(t, B);
      for (int n = n_min; n <= n_max; ++n) {
        GridOutcome g{{B, t, n}, {}, {}};
        try {
          g.result = compute_predim(n, B, spec.a1(static_cast<std::size_t>(n)), opt);
        } catch (const Error& e) {
          g.error = e.code() + ": " + e.what();
        }
        out.push_back(std::move(g));
      }
    }
  }
  return out;
}

SuiteResult threshold_suite(const std::vector<GridOutcome>& grid) {
  SuiteResult r;
  r.name = "threshold_implications";
  std::size_t inconclusive = 0, errors = 0;
  for (const auto& g : grid) {
    if (!g.error.empty()) {
      ++r.checks;
      ++r.failures;
      ++errors;
      continue;
    }
    for (Verdict v : g.result.thresholds) {
      ++r.checks;
      if (v == Verdict::kFail) ++r.failures;
      if (v == Verdict::kInconclusive) ++inconclusive;
    }
  }
  r.detail = std::to_string(grid.size()) + " grid points, " + std::to_string(inconclusive) + " inconclusive, " +
             std::to_string(errors) + " errors";
  return r;
}

WitnessSuiteReport witness_suite(const WitnessParams& p, std::size_t samples, std::uint64_t seed) {
  WitnessSuiteReport rep;
  Witness w = build_witness(p);
  rep.total_mass = w.total_mass();

  MembershipReport mr = membership_samples(w);
  rep.membership = {"witness_membership", mr.samples, mr.failures + mr.inconclusive,
                    std::to_string(mr.intervals) + " intervals"};

  GapReport g = gap_check(w);
  rep.gaps = {"witness_gaps", g.pairs, g.violations,
              "worst distance/required " + short_num(g.worst_block_ratio) + " (blocks), " +
                  short_num(g.worst_last_ratio) + " (last entry)"};

  MeasureBoundReport mb = measure_bounds(w);
  bool mass_ok = std::abs(rep.total_mass - 1.0) <= 1e-9;
  rep.measure = {"witness_measure",
                 mb.cylinder_checks + mb.interval_checks * 2 + 1,
                 mb.cylinder_violations + mb.interval_violations + mb.length_violations + (mass_ok ? 0 : 1),
                 "total mass " + short_num(rep.total_mass) + ", interval constant " +
                     short_num(mb.interval_constant)};

  HolderReport h = holder_check(w, holder_samples(w, samples, seed));
  rep.holder_max = h.max_ratio;
  rep.holder = {"witness_holder", h.samples, h.pass() ? 0u : 1u,
                "max ratio " + short_num(h.max_ratio) + " vs " + short_num(h.lemma_constant)};

  ContentBound cb = content_lower_bound(w, h);
  rep.content_bound = cb.bound;
  rep.content_explicit = cb.explicit_form;
  rep.content = {"witness_content", 1, cb.bound >= cb.explicit_form ? 0u : 1u,
                 "bound " + short_num(cb.bound) + " vs explicit " + short_num(cb.explicit_form)};
  return rep;
}

}  // namespace shrinkdim::cli
