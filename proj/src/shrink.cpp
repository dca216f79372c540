#include "shrinkdim/shrink.hpp"

#include <algorithm>
#include <cmath>

#include "shrinkdim/errors.hpp"
#include "shrinkdim/sums.hpp"

namespace shrinkdim {

namespace {

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Enclosure of |X - Y| for closed rational intervals.
RationalInterval abs_diff(const RationalInterval& X, const RationalInterval& Y) {
  Rational lo = X.lo - Y.hi, hi = X.hi - Y.lo;
  if (lo >= 0) return {lo, hi};
  if (hi <= 0) return {Rational(-hi), Rational(-lo)};
  return {Rational(0), std::max(Rational(-lo), hi)};
}

Tri compare_product(const RationalInterval& a, const RationalInterval& b, const Rational& c) {
  Rational lo = a.lo * b.lo, hi = a.hi * b.hi;
  if (hi < c) return Tri::kTrue;
  if (lo >= c) return Tri::kFalse;
  return Tri::kInconclusive;
}

// sqrt(R) for R >= 0 to about `bits` fractional bits; a point when exact.
RationalInterval sqrt_enclose(const Rational& R, int bits) {
  if (R < 0) throw InvalidArgument("sqrt of a negative rational");
  BigInt num = R.get_num(), den = R.get_den();
  BigInt scale = BigInt(1) << bits;
  BigInt N = num * den * scale * scale;
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), N.get_mpz_t());
  BigInt d = den * scale;
  Rational lo(r, d);
  lo.canonicalize();
  if (r * r == N) return RationalInterval::exact(lo);
  Rational hi(r + 1, d);
  hi.canonicalize();
  return {lo, hi};
}

RationalInterval add(const RationalInterval& a, const RationalInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
RationalInterval scale(const RationalInterval& a, const Rational& k) {
  return k >= 0 ? RationalInterval{a.lo * k, a.hi * k} : RationalInterval{a.hi * k, a.lo * k};
}
RationalInterval rmax(const RationalInterval& a, const RationalInterval& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}
RationalInterval rmin(const RationalInterval& a, const RationalInterval& b) {
  return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// Map y = T^{n+1} x to x on I_{n+1}(prefix, b).
struct CylinderMap {
  BigInt P1, Q1, P0, Q0;
  CylinderMap(const Word& prefix, Digit b) {
    Word w = prefix;
    w.push_back(b);
    Continuants c(w);
    int n1 = c.n();
    P1 = c.p(n1);
    Q1 = c.q(n1);
    P0 = c.p(n1 - 1);
    Q0 = c.q(n1 - 1);
  }
  Rational x(const Rational& y) const {
    Rational r = (Rational(P1) + y * Rational(P0)) / (Rational(Q1) + y * Rational(Q0));
    r.canonicalize();
    return r;
  }
  bool increasing() const { return P0 * Q1 - P1 * Q0 > 0; }
  // x-image of the y-range [ylo, yhi], with the endpoint enclosures.
  FuzzyInterval image(const RationalInterval& ylo, const RationalInterval& yhi) const {
    if (increasing()) return {{x(ylo.lo), x(ylo.hi)}, {x(yhi.lo), x(yhi.hi)}};
    return {{x(yhi.hi), x(yhi.lo)}, {x(ylo.hi), x(ylo.lo)}};
  }
  std::pair<Rational, Rational> image(const Rational& ylo, const Rational& yhi) const {
    Rational a = x(ylo), b = x(yhi);
    if (a > b) std::swap(a, b);
    return {a, b};
  }
};

}  // namespace

Rational base_power_inv(double B, int n) {
  if (!(B > 0) || !std::isfinite(B)) throw InvalidArgument("B must be positive and finite");
  Rational b(B);
  Rational p(1);
  for (int i = 0; i < n; ++i) p *= b;
  Rational r = 1 / p;
  r.canonicalize();
  return r;
}

Tri membership_verdict(const DigitSeq& x, const TargetSpec& spec, double B, int n, std::size_t max_depth) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  Rational c = base_power_inv(B, n);
  DigitSeq z = spec.digits_at(static_cast<std::size_t>(n));
  DigitSeq tz = z.shift(1);
  DigitSeq xn = x.shift(static_cast<std::size_t>(n));
  DigitSeq xn1 = x.shift(static_cast<std::size_t>(n) + 1);
  for (std::size_t depth = 48;; depth *= 2) {
    depth = std::min(depth, max_depth);
    Tri t = compare_product(abs_diff(xn.value(depth), z.value(depth)), abs_diff(xn1.value(depth), tz.value(depth)), c);
    bool exact = xn.terminating() && xn1.terminating() && z.terminating() && tz.terminating();
    if (t != Tri::kInconclusive || exact || depth >= max_depth) return t;
  }
}

Tri membership_verdict(const Rational& x, const TargetSpec& spec, double B, int n, std::size_t max_depth) {
  if (x < 0 || x >= 1) throw InvalidArgument("x must lie in [0, 1)");
  return membership_verdict(DigitSeq::of_rational(x), spec, B, n, max_depth);
}

bool membership(const DigitSeq& x, const TargetSpec& spec, double B, int n) {
  Tri t = membership_verdict(x, spec, B, n);
  if (t == Tri::kInconclusive)
    throw PrecisionExhausted("product straddles B^-n at level " + std::to_string(n));
  return t == Tri::kTrue;
}

bool membership(const Rational& x, const TargetSpec& spec, double B, int n) {
  Tri t = membership_verdict(x, spec, B, n);
  if (t == Tri::kInconclusive)
    throw PrecisionExhausted("product straddles B^-n at level " + std::to_string(n));
  return t == Tri::kTrue;
}

IdentityResult identity_check(const Rational& x, const Rational& z, int n) {
  if (z <= 0 || z > 1) throw InvalidArgument("identity needs 0 < z <= 1");
  Rational xn = gauss_iterate(x, n);
  if (xn == 0) throw InvalidArgument("T^n x = 0: digit a_{n+1}(x) does not exist");
  Rational inv = 1 / xn;
  BigInt a;
  mpz_fdiv_q(a.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
  Rational y = gauss_step(xn);
  BigInt A;
  Rational w;
  if (z == 1) {
    A = 1;
    w = 0;
  } else {
    Rational zi = 1 / z;
    mpz_fdiv_q(A.get_mpz_t(), zi.get_num_mpz_t(), zi.get_den_mpz_t());
    w = gauss_step(z);
  }
  IdentityResult r;
  r.lhs = abs_q(xn - z);
  r.rhs = abs_q(Rational(A - a) + (w - y)) / ((Rational(a) + y) * (Rational(A) + w));
  r.lhs.canonicalize();
  r.rhs.canonicalize();
  return r;
}

std::string jcase_name(JCase c) {
  switch (c) {
    case JCase::kFar:
      return "FAR";
    case JCase::kAdjacent:
      return "ADJACENT";
    case JCase::kEqual:
      return "EQUAL";
  }
  return "?";
}

JIntervalBound j_interval_bounds(const Word& prefix, Digit a_next, std::optional<Digit> a1z, double B, int n) {
  if (!a1z) throw Inapplicable("z_n = 0: J-interval bounds need a finite first digit of the target");
  if (static_cast<int>(prefix.size()) != n) throw InvalidArgument("prefix length must equal n");
  if (a_next == 0) throw InvalidArgument("digits must be positive");
  JIntervalBound j;
  j.prefix = prefix;
  j.next_digit = a_next;
  BigInt q = q_of(prefix);
  Rational q2(q * q);
  Rational c = base_power_inv(B, n);
  Rational A(to_bigint(*a1z)), b(to_bigint(a_next));
  Rational gap = abs_q(A - b);
  if (gap > 1) {
    j.kind = JCase::kFar;
    j.upper_len = to_enclosure(Rational(16 * A * c / (q2 * b * gap)));
    j.lower_len = to_enclosure(Rational(A * c / (16 * q2 * b * gap)));
  } else if (gap == 1) {
    j.kind = JCase::kAdjacent;
    if (8 * A * b * c >= Rational(1, 2)) {
      j.full_cylinder = true;
      j.pieces = 1;
      j.upper_len = to_enclosure(cylinder(concat(prefix, {a_next})).length());
    } else {
      j.pieces = 2;
      j.upper_len = to_enclosure(Rational(16 * A * c / (q2 * b * gap)));
    }
    j.lower_len = {0.0, 0.0};
  } else {
    j.kind = JCase::kEqual;
    Enclosure root = pow(Enclosure::point(B), Enclosure::point(-0.5 * n));
    Enclosure qa = to_enclosure(Rational(q2 * A));
    j.upper_len = Enclosure::point(2.0) * root / qa;
    j.lower_len = root / (Enclosure::point(4.0) * qa);
  }
  return j;
}

JIntervalBound j_interval_bounds(const Word& prefix, Digit a_next, const TargetSpec& spec, double B, int n) {
  return j_interval_bounds(prefix, a_next, spec.a1(static_cast<std::size_t>(n)), B, n);
}

Rational FuzzyInterval::min_length() const {
  Rational d = right.lo - left.hi;
  return d > 0 ? d : Rational(0);
}

Rational FuzzyInterval::max_length() const { return right.hi - left.lo; }

JSolution solve_j(const Word& prefix, Digit a_next, std::optional<Digit> a1z, const Rational& tz, double B,
                  int sqrt_bits) {
  int n = static_cast<int>(prefix.size());
  Rational c = base_power_inv(B, n);
  CylinderMap map(prefix, a_next);
  std::vector<std::pair<RationalInterval, RationalInterval>> ys;  // y-ranges
  if (!a1z) {
    // y / (b + y) < c  <=>  y < c b / (1 - c).
    Rational top = c >= 1 ? Rational(1) : std::min(Rational(1), Rational(c * a_next / (1 - c)));
    if (top > 0) ys.push_back({RationalInterval::exact(0), RationalInterval::exact(top)});
  } else {
    // With u = y - w: |u (d - u)| < K (L + u), d = A - b, K = c (A + w),
    // L = b + w. Solutions: (s-, s+) minus [r-, r+].
    Rational w = tz, A(to_bigint(*a1z)), b(to_bigint(a_next));
    Rational d = A - b, K = c * (A + w), L = b + w;
    Rational half(1, 2);
    RationalInterval ds = sqrt_enclose((d + K) * (d + K) + 4 * K * L, sqrt_bits);
    RationalInterval s_minus = scale(add(RationalInterval::exact(d + K), scale(ds, -1)), half);
    RationalInterval s_plus = scale(add(RationalInterval::exact(d + K), ds), half);
    RationalInterval lo = rmax(s_minus, RationalInterval::exact(-w));
    RationalInterval hi = rmin(s_plus, RationalInterval::exact(1 - w));
    std::vector<std::pair<RationalInterval, RationalInterval>> us;
    if (hi.hi > lo.lo) {
      Rational disc = (d - K) * (d - K) - 4 * K * L;
      if (disc >= 0) {
        RationalInterval dr = sqrt_enclose(disc, sqrt_bits);
        RationalInterval r_minus = scale(add(RationalInterval::exact(d - K), scale(dr, -1)), half);
        RationalInterval r_plus = scale(add(RationalInterval::exact(d - K), dr), half);
        RationalInterval left_end = rmin(hi, r_minus);
        if (left_end.hi > lo.lo) us.push_back({lo, left_end});
        RationalInterval right_start = rmax(lo, r_plus);
        if (hi.hi > right_start.lo) us.push_back({right_start, hi});
      } else {
        us.push_back({lo, hi});
      }
    }
    for (auto& [ulo, uhi] : us)
      ys.push_back({add(ulo, RationalInterval::exact(w)), add(uhi, RationalInterval::exact(w))});
  }
  JSolution sol;
  for (auto& [ylo, yhi] : ys) sol.components.push_back(map.image(ylo, yhi));
  std::sort(sol.components.begin(), sol.components.end(),
            [](const FuzzyInterval& a, const FuzzyInterval& b) { return a.left.lo < b.left.lo; });
  if (!sol.components.empty()) {
    FuzzyInterval hull{sol.components.front().left, sol.components.back().right};
    sol.hull_min = hull.min_length();
    sol.hull_max = hull.max_length();
    for (const auto& f : sol.components) {
      sol.longest_min = std::max(sol.longest_min, f.min_length());
      sol.longest_max = std::max(sol.longest_max, f.max_length());
    }
  }
  return sol;
}

std::vector<std::pair<Rational, Rational>> cover_pieces(const Word& prefix, Digit a_next, std::optional<Digit> a1z,
                                                        const Rational& tz, double B) {
  int n = static_cast<int>(prefix.size());
  Rational c = base_power_inv(B, n);
  CylinderMap map(prefix, a_next);
  Rational b(to_bigint(a_next));
  std::vector<std::pair<Rational, Rational>> ys;
  auto ball = [&](const Rational& centre, const Rational& radius) {
    Rational lo = std::max(Rational(0), Rational(centre - radius));
    Rational hi = std::min(Rational(1), Rational(centre + radius));
    if (hi >= lo) ys.push_back({lo, hi});
  };
  if (!a1z) {
    ball(Rational(0), Rational(8 * b * c));
  } else {
    Rational A(to_bigint(*a1z));
    Rational gap = abs_q(A - b);
    if (gap > 1) {
      ball(tz, Rational(8 * A * b * c / gap));
    } else if (gap == 1) {
      Rational rho = 8 * A * b * c;
      if (rho >= Rational(1, 2)) {
        ys.push_back({Rational(0), Rational(1)});
      } else {
        ball(tz, rho);
        // |y - w| >= 1 - rho
        if (tz + 1 - rho <= 1) ys.push_back({Rational(tz + 1 - rho), Rational(1)});
        if (tz - 1 + rho >= 0) ys.push_back({Rational(0), Rational(tz - 1 + rho)});
      }
    } else {
      Enclosure root = pow(Enclosure::point(B), Enclosure::point(-0.5 * n));
      ball(tz, Rational(2 * A * Rational(root.hi)));
    }
  }
  std::vector<std::pair<Rational, Rational>> xs;
  for (auto& [lo, hi] : ys) xs.push_back(map.image(lo, hi));
  return xs;
}

CoverReport cover_svolume(const PredimResult& pre, const TargetSpec& spec, double s, int M) {
  (void)spec;
  CoverReport r;
  r.n = pre.n;
  r.B = pre.B;
  r.s = s;
  r.branch = pre.branch;
  int n = pre.n;
  double B = pre.B;
  r.level_sum = continuant_power_sum(n, s, M);
  Enclosure S = Enclosure::point(s);
  Enclosure c = to_enclosure(base_power_inv(B, n));
  Enclosure c_s = pow(c, S);                          // B^{-ns}
  Enclosure sixteen_s = pow_exact_base(16.0, s);      // 16^s
  Enclosure root_c = pow(Enclosure::point(B), Enclosure::point(-0.5 * n));
  auto far_weight = [&](Digit b) {
    // (a1z / (b |a1z - b|))^s, the limit b^{-s} when z_n = 0.
    if (!pre.a1z) return pow_exact_base(static_cast<double>(b), -s);
    Rational A(to_bigint(*pre.a1z)), bb(to_bigint(b));
    return pow(to_enclosure(Rational(A / (bb * abs_q(A - bb)))), S);
  };
  // s-volume of the pieces over I_{n+1}(a, b), divided by q_n(a)^{-2s}.
  auto piece = [&](Digit b) -> Enclosure {
    if (!pre.a1z) return sixteen_s * c_s * far_weight(b);
    Digit A = *pre.a1z;
    Digit gap = A > b ? A - b : b - A;
    if (gap > 1) return sixteen_s * c_s * far_weight(b);
    if (gap == 1) {
      Rational rho = 8 * Rational(to_bigint(A)) * Rational(to_bigint(b)) * base_power_inv(B, n);
      if (rho >= Rational(1, 2)) return pow_exact_base(static_cast<double>(b), -2.0 * s);
      return Enclosure::point(2.0) * sixteen_s * c_s * far_weight(b);
    }
    return pow(Enclosure::point(2.0) * root_c / to_enclosure(to_bigint(A)), S);
  };
  if (pre.branch == Branch::kCaseS1) {
    Enclosure half_power = scale_nonneg(exp(Enclosure::point(n) * pre.s1.s * log(Enclosure::point(B))), 0.5);
    double k = std::floor(half_power.hi);
    if (k > 5e7) throw BudgetExceeded("cutoff floor(B^{n s1}/2) too large to sum");
    r.cutoff = static_cast<std::uint64_t>(k);
    Enclosure tail = pow_exact_base(static_cast<double>(r.cutoff + 1), -s);
    Enclosure small{0.0, 0.0};
    for (std::uint64_t b = r.cutoff; b >= 1; --b) small += piece(b);
    r.terms.push_back({"cylinders_beyond_cutoff", tail});
    r.terms.push_back({"pieces_up_to_cutoff", small});
  } else {
    if (!pre.a1z) throw Inapplicable("second branch needs a finite first digit");
    Digit A = *pre.a1z;
    std::uint64_t cutoff = std::max<std::uint64_t>(4 * A, 16384);
    Enclosure all_far = sixteen_s * c_s * lemma_sum(A, s, cutoff);
    Enclosure adj_far{0.0, 0.0}, adj{0.0, 0.0};
    for (Digit b : {A - 1, A + 1}) {
      if (b == 0) continue;
      adj_far += sixteen_s * c_s * far_weight(b);
      adj += piece(b);
    }
    r.terms.push_back({"far_pieces", all_far - adj_far});
    r.terms.push_back({"adjacent_pieces", adj});
    r.terms.push_back({"equal_piece", piece(A)});
  }
  r.inner = {0.0, 0.0};
  for (const auto& t : r.terms) r.inner += t.value;
  r.inner.lo = std::max(0.0, r.inner.lo);
  r.total = r.level_sum * r.inner;
  return r;
}

CoverReport cover_svolume(int n, double B, const TargetSpec& spec, double s, int M, const PredimOptions& popt) {
  PredimResult pre = compute_predim(n, B, spec.a1(static_cast<std::size_t>(n)), popt);
  return cover_svolume(pre, spec, s, M);
}

DecayFit fit_decay(const std::vector<int>& n, const std::vector<double>& totals) {
  if (n.size() != totals.size() || n.size() < 2) throw InvalidArgument("decay fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = n.size();
  std::vector<double> y(k);
  for (std::size_t i = 0; i < k; ++i) {
    y[i] = std::log2(totals[i]);
    sx += n[i];
    sy += y[i];
    sxx += static_cast<double>(n[i]) * n[i];
    sxy += n[i] * y[i];
  }
  DecayFit f;
  double kk = static_cast<double>(k);
  f.slope = (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / kk;
  for (std::size_t i = 0; i < k; ++i) f.residuals.push_back(y[i] - (f.intercept + f.slope * n[i]));
  return f;
}

HitReport hit_times(const DigitSeq& x, const TargetSpec& spec, double B, int N) {
  HitReport h;
  for (int n = 1; n <= N; ++n) {
    Tri t = membership_verdict(x, spec, B, n);
    if (t == Tri::kTrue) h.hits.push_back(n);
    if (t == Tri::kInconclusive) h.inconclusive.push_back(n);
  }
  return h;
}

}  // namespace shrinkdim
