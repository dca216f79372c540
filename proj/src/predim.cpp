#include "shrinkdim/predim.hpp"

#include <algorithm>
#include <cmath>

#include "shrinkdim/errors.hpp"
#include "shrinkdim/parallel.hpp"
#include "shrinkdim/pressure.hpp"

namespace shrinkdim {

namespace {

WeightKind weight_kind(int kind) {
  switch (kind) {
    case 1:
      return WeightKind::kPre1;
    case 2:
      return WeightKind::kPre2;
    case 3:
      return WeightKind::kPre3;
    default:
      throw InvalidArgument("kind must be 1, 2 or 3");
  }
}

// B^{x} for an enclosed exponent.
Enclosure base_power(double B, const Enclosure& x) { return exp(x * log(Enclosure::point(B))); }

enum class Tri { kTrue, kFalse, kUnknown };

Verdict implication(Tri premise, Tri conclusion) {
  if (premise == Tri::kFalse || conclusion == Tri::kTrue) return Verdict::kPass;
  if (premise == Tri::kTrue && conclusion == Tri::kFalse) return Verdict::kFail;
  return Verdict::kInconclusive;
}

// a1z >= B^{x}
Tri digit_at_least(std::optional<Digit> a1z, double B, const Enclosure& x) {
  if (!a1z) return Tri::kTrue;
  Enclosure a = to_enclosure(to_bigint(*a1z));
  Enclosure p = base_power(B, x);
  if (a.lo >= p.hi) return Tri::kTrue;
  if (a.hi < p.lo) return Tri::kFalse;
  return Tri::kUnknown;
}

Tri negate(Tri t) { return t == Tri::kTrue ? Tri::kFalse : t == Tri::kFalse ? Tri::kTrue : Tri::kUnknown; }

// x <= y for enclosures.
Tri le(const Enclosure& x, const Enclosure& y) {
  if (x.hi <= y.lo) return Tri::kTrue;
  if (x.lo > y.hi) return Tri::kFalse;
  return Tri::kUnknown;
}

Tri lt(const Enclosure& x, const Enclosure& y) {
  if (x.hi < y.lo) return Tri::kTrue;
  if (x.lo >= y.hi) return Tri::kFalse;
  return Tri::kUnknown;
}

std::uint64_t ipow(int M, int n) {
  double v = std::pow(static_cast<double>(M), n);
  return v > 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(v);
}

}  // namespace

std::string branch_name(Branch b) { return b == Branch::kCaseS1 ? "CASE_S1" : "CASE_MAX_S2_S3"; }

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "PASS";
    case Verdict::kFail:
      return "FAIL";
    default:
      return "INCONCLUSIVE";
  }
}

int default_cutoff(int n) {
  if (n <= 6) return 20;
  return std::max(2, static_cast<int>(std::floor(std::pow(1e7, 1.0 / n))));
}

PredimRoot solve_predim(int n, double B, int kind, std::optional<Digit> a1z, int M, double tol,
                        const SumOptions& opt) {
  if (!(B > 1)) throw InvalidArgument("B must exceed 1");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (!(tol > 0)) throw InvalidArgument("tol must be positive");
  PredimRoot r;
  r.M = M;
  WeightKind wk = weight_kind(kind);
  if (!a1z && kind != 1) {
    r.conventional = true;
    r.s = kind == 2 ? Enclosure{1.0, 1.0} : Enclosure{0.0, 0.0};
    return r;
  }
  WeightSpec w{wk, B, n, a1z};
  SumOptions so = opt;
  so.max_relative_width = INFINITY;
  auto eval = [&](double s) {
    ++r.evaluations;
    return continuant_sum_enclosure(n, s, w, M, so);
  };
  // Value of the root is 1 when the sum exceeds 1 on all of [0, 1].
  Enclosure at_one = eval(1.0);
  if (at_one.lo > 1.0) {
    r.no_root_in_unit = true;
    r.s = {1.0, 1.0};
    return r;
  }
  double lo = 0.5 + opt.margin, hi = 1.0;
  lo = std::nextafter(lo, 1.0);
  Enclosure at_lo = eval(lo);
  if (at_lo.lo < 1.0) {
    // Root not certified above the margin; fall back on s > 1/2.
    r.lower_at_half = true;
    if (at_lo.hi <= 1.0) {
      r.s = {0.5, lo};
      return r;
    }
    lo = 0.5;
  }
  // Invariant: lo certified below the root (or 1/2), hi certified above or 1.
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= 0.5 + opt.margin) break;
    Enclosure e = eval(mid);
    if (e.hi <= 1.0) {
      hi = mid;
    } else if (e.lo >= 1.0) {
      lo = mid;
    } else {
      // Straddle: tighten each side toward mid separately.
      double a = lo, b = mid;
      while (b - a > tol / 8 && b - a > 1e-15) {
        double m = 0.5 * (a + b);
        if (m <= 0.5 + opt.margin) break;
        if (eval(m).lo >= 1.0) a = m; else b = m;
      }
      double c = mid, d = hi;
      while (d - c > tol / 8 && d - c > 1e-15) {
        double m = 0.5 * (c + d);
        if (eval(m).hi <= 1.0) d = m; else c = m;
      }
      lo = a;
      hi = d;
      break;
    }
  }
  r.s = {lo, hi};
  return r;
}

Selection select_sn(const Enclosure& s1, const Enclosure& s2, const Enclosure& s3) {
  if (s1.hi <= s2.lo) return {s1, Branch::kCaseS1};
  if (s1.lo > s2.hi) return {max(s2, s3), Branch::kCaseMaxS2S3};
  throw AmbiguousBranch("s1 " + s1.str() + " and s2 " + s2.str() + " overlap");
}

std::array<Verdict, 4> threshold_check(const PredimResult& r) {
  const Enclosure& s1 = r.s1.s;
  const Enclosure& s2 = r.s2.s;
  const Enclosure& s3 = r.s3.s;
  Enclosure nn = Enclosure::point(r.n);
  Enclosure half = Enclosure::point(0.5);
  std::array<Verdict, 4> v{};
  v[0] = implication(le(s1, s2), digit_at_least(r.a1z, r.B, nn * s1));
  v[1] = implication(negate(le(s1, s2)), negate(digit_at_least(r.a1z, r.B, nn * s2)));
  v[2] = implication(lt(s2, s3), negate(digit_at_least(r.a1z, r.B, nn * s3 * half)));
  v[3] = implication(negate(lt(s2, s3)), digit_at_least(r.a1z, r.B, nn * s2 * half));
  return v;
}

PredimResult compute_predim(int n, double B, std::optional<Digit> a1z, const PredimOptions& opt) {
  PredimResult r;
  r.n = n;
  r.B = B;
  r.a1z = a1z;
  int M = opt.M > 0 ? opt.M : default_cutoff(n);
  auto solve_kind = [&](int kind) {
    int m = M;
    PredimRoot root = solve_predim(n, B, kind, a1z, m, opt.tol, opt.sum);
    for (int k = 0; k < opt.max_refinements && root.s.width() > opt.tol && !root.conventional &&
                    !root.no_root_in_unit;
         ++k) {
      int next = m * 2;
      if (ipow(next, n) > kWordBudget) break;
      m = next;
      PredimRoot better = solve_predim(n, B, kind, a1z, m, opt.tol, opt.sum);
      better.evaluations += root.evaluations;
      root = better;
    }
    return root;
  };
  r.s1 = solve_kind(1);
  r.s2 = solve_kind(2);
  r.s3 = solve_kind(3);
  try {
    Selection sel = select_sn(r.s1.s, r.s2.s, r.s3.s);
    r.sn = sel.sn;
    r.branch = sel.branch;
  } catch (const AmbiguousBranch&) {
    // At s = s1 the second sum equals (a1z / B^{n s1})^{1 - s1}, so
    // s1 <= s2 exactly when a1z >= B^{n s1}.
    Tri t = digit_at_least(a1z, B, Enclosure::point(n) * r.s1.s);
    if (t == Tri::kUnknown) throw;
    r.branch_by_threshold = true;
    r.branch = t == Tri::kTrue ? Branch::kCaseS1 : Branch::kCaseMaxS2S3;
    r.sn = t == Tri::kTrue ? r.s1.s : max(r.s2.s, r.s3.s);
  }
  r.thresholds = threshold_check(r);
  return r;
}

SstarEstimate sstar_estimate(const TargetSpec& target, double B, int n_min, int n_max, const PredimOptions& opt) {
  if (n_min < 1 || n_max < n_min) throw InvalidArgument("empty n range");
  SstarEstimate est;
  est.n_min = n_min;
  est.n_max = n_max;
  std::size_t count = static_cast<std::size_t>(n_max - n_min + 1);
  est.per_n.resize(count);
  est.skipped_reason.resize(count);
  parallel_for(count, [&](std::size_t i) {
    int n = n_min + static_cast<int>(i);
    try {
      est.per_n[i] = compute_predim(n, B, target.a1(static_cast<std::size_t>(n)), opt);
    } catch (const Error& e) {
      est.skipped_reason[i] = e.code() + std::string(": ") + e.what();
    }
  });
  double mlo = -INFINITY, mhi = -INFINITY;
  for (std::size_t i = 0; i < count; ++i) {
    if (est.per_n[i]) {
      mlo = std::max(mlo, est.per_n[i]->sn.lo);
      mhi = std::max(mhi, est.per_n[i]->sn.hi);
    }
    est.running_max_lo.push_back(mlo);
    est.running_max_hi.push_back(mhi);
  }
  return est;
}

double f_m_iterate(int m, double s) {
  if (m < 1) throw InvalidArgument("m must be >= 1");
  double f = s;
  for (int k = 1; k < m; ++k) f = s * f / (1.0 - s + f);
  return f;
}

Enclosure em_dimension(int m, double B, int M, int depth, double tol) {
  if (m != 1 && m != 2) throw InvalidArgument("em_dimension supports m = 1 or 2");
  PotentialSpec phi;
  phi.kind = PotentialKind::kEm;
  phi.B = B;
  phi.m = m;
  Alphabet A;
  for (int a = 1; a <= M; ++a) A.push_back(static_cast<Digit>(a));
  return pressure_root(phi, A, depth, tol).estimate;
}

}  // namespace shrinkdim
