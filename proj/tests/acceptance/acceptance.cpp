// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "shrinkdim/errors.hpp"
#include "shrinkdim/predim.hpp"
#include "shrinkdim/pressure.hpp"
#include "shrinkdim/shrink.hpp"
#include "shrinkdim/sums.hpp"
#include "suites.hpp"

using namespace shrinkdim;
using namespace shrinkdim::cli;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[1024];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Clock::time_point start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d [%s]: %s (%.1f s) %s\n", id, title.c_str(), o.pass ? "PASS" : "FAIL",
              seconds_since(start), o.detail.c_str());
  std::fflush(stdout);
}

// Roots of zeta(2s) = B^{s^2}, computed independently with mpmath.
const std::vector<std::pair<double, double>> kLevelOneRoots = {
    {2.0, 0.9254787365250165332746}, {4.0, 0.7869640227730459820311}, {16.0, 0.6723737190373779039061}};

const std::vector<double> kGridBases = {2.0, 4.0, 16.0};
const std::vector<std::string> kGridTargets = {"zero", "golden", "exp:halflogB:1"};

WeightKind weight_of(int kind) {
  return kind == 1 ? WeightKind::kPre1 : kind == 2 ? WeightKind::kPre2 : WeightKind::kPre3;
}

// The defining sum is decreasing in s; its enclosure straddles 1 somewhere in
// [lo, hi] when it is >= 1 at lo and <= 1 at hi.
bool straddles(const PredimResult& r, int kind, const PredimRoot& root, std::string& why) {
  WeightSpec w{weight_of(kind), r.B, r.n, r.a1z};
  SumOptions opt;
  opt.margin = 0.0;
  if (!root.lower_at_half && root.s.lo > 0.5) {
    Enclosure at_lo = continuant_sum_enclosure(r.n, root.s.lo, w, root.M, opt);
    if (at_lo.hi < 1.0) {
      why = fmt("sum at lo = [%.17g, %.17g] < 1", at_lo.lo, at_lo.hi);
      return false;
    }
  }
  Enclosure at_hi = continuant_sum_enclosure(r.n, root.s.hi, w, root.M, opt);
  if (at_hi.lo > 1.0) {
    why = fmt("sum at hi = [%.17g, %.17g] > 1", at_hi.lo, at_hi.hi);
    return false;
  }
  return true;
}

std::vector<GridOutcome> grid;

Outcome criterion_cf() {
  Clock::time_point start = Clock::now();
  SuiteResult r = cf_invariant_suite(10000, 12, 50, 2024);
  double t = seconds_since(start);
  return {r.pass() && t < 10.0, fmt("%zu checks, %zu failures, %.2f s", r.checks, r.failures, t)};
}

Outcome criterion_lemma_sum() {
  std::vector<RatioRange> ranges;
  SuiteResult r = lemma_sum_suite(1000, {0.6, 0.75, 1.0}, &ranges);
  Enclosure one = lemma_sum(1, 1.0, 16384);
  bool unit = one.contains(1.0) && one.width() <= 1e-10;
  std::string detail = r.detail + fmt("; a=1,t=1: [%.17g, %.17g]", one.lo, one.hi);
  return {r.pass() && unit, detail};
}

Outcome criterion_roots() {
  grid = predim_grid(kGridBases, kGridTargets, 1, 5, PredimOptions{});
  std::size_t roots = 0, conventional = 0, bad = 0;
  double widest = 0.0, lowest = 1.0;
  std::string first;
  for (const auto& g : grid) {
    auto where = fmt("B=%g %s n=%d", g.where.B, g.where.target.c_str(), g.where.n);
    if (!g.error.empty()) {
      ++bad;
      if (first.empty()) first = where + ": " + g.error;
      continue;
    }
    const PredimResult& r = g.result;
    const PredimRoot* all[] = {&r.s1, &r.s2, &r.s3};
    for (int kind = 1; kind <= 3; ++kind) {
      const PredimRoot& root = *all[kind - 1];
      if (root.conventional || root.no_root_in_unit) {
        ++conventional;
        continue;
      }
      ++roots;
      widest = std::max(widest, root.s.width());
      lowest = std::min(lowest, root.s.lo);
      std::string why;
      bool ok = root.s.lo > 0.5 && root.s.width() <= 1e-3 && straddles(r, kind, root, why);
      if (!ok) {
        ++bad;
        if (first.empty()) first = where + fmt(" s%d=[%.17g, %.17g] ", kind, root.s.lo, root.s.hi) + why;
      }
    }
  }
  return {bad == 0, fmt("%zu roots, %zu conventional, widest %.3g, lowest lo %.6f", roots, conventional, widest,
                        lowest) +
                        (first.empty() ? "" : "; first failure: " + first)};
}

Outcome criterion_oracle() {
  bool ok = true;
  std::string detail;
  for (auto [B, root] : kLevelOneRoots) {
    PredimRoot r = solve_predim(1, B, 1, std::nullopt, 20, 1e-7);
    bool pass = r.s.contains(root) && r.s.width() <= 1e-6;
    ok = ok && pass;
    detail += fmt("B=%g [%.12f, %.12f] width %.2g%s; ", B, r.s.lo, r.s.hi, r.s.width(), pass ? "" : " MISS");
  }
  return {ok, detail};
}

Outcome criterion_thresholds() {
  if (grid.empty()) grid = predim_grid(kGridBases, kGridTargets, 1, 5, PredimOptions{});
  SuiteResult r = threshold_suite(grid);
  return {r.pass(), fmt("%zu checks, %zu failures; ", r.checks, r.failures) + r.detail};
}

struct DecayResult {
  bool pass;
  std::string detail;
};

DecayResult decay_for(const std::string& target) {
  const double B = 4.0;
  const int M = 20;
  TargetSpec spec = TargetSpec::parse(target, B);
  PredimOptions opt;
  opt.M = M;
  std::vector<int> ns{2, 3, 4, 5, 6};
  std::vector<PredimResult> pre;
  double top = 0.0, bottom = 1.0;
  for (int n : ns) {
    pre.push_back(compute_predim(n, B, spec.a1(static_cast<std::size_t>(n)), opt));
    top = std::max(top, pre.back().s1.s.hi);
    bottom = std::min(bottom, pre.back().s1.s.lo);
  }
  double s_above = top + 0.05, s_below = bottom - 0.05;
  std::vector<double> above, below;
  for (const auto& p : pre) {
    above.push_back(cover_svolume(p, spec, s_above, M).total.hi);
    below.push_back(cover_svolume(p, spec, s_below, M).total.lo);
  }
  bool decreasing = true, nondecreasing = true;
  for (std::size_t i = 1; i < ns.size(); ++i) {
    decreasing = decreasing && above[i] < above[i - 1];
    nondecreasing = nondecreasing && below[i] >= below[i - 1];
  }
  DecayFit fa = fit_decay(ns, above), fb = fit_decay(ns, below);
  bool ok = decreasing && fa.slope <= -0.1 && nondecreasing;
  return {ok, fmt("%s (%s): s=%.4f slope %.3f %s, s=%.4f slope %.3f %s", target.c_str(),
                  branch_name(pre.back().branch).c_str(), s_above, fa.slope,
                  decreasing ? "decreasing" : "NOT decreasing", s_below, fb.slope,
                  nondecreasing ? "non-decreasing" : "DECREASING")};
}

Outcome criterion_cover() {
  Clock::time_point start = Clock::now();
  DecayResult z = decay_for("zero");
  DecayResult g = decay_for("golden");
  double t = seconds_since(start);
  return {z.pass && g.pass && t < 300.0, z.detail + "; " + g.detail};
}

Outcome criterion_witness() {
  WitnessSuiteReport w = witness_suite(WitnessParams{}, 10000, 7);
  bool ok = true;
  std::string detail;
  for (const SuiteResult* s : {&w.membership, &w.gaps, &w.measure, &w.holder, &w.content}) {
    ok = ok && s->pass();
    detail += fmt("%s %zu/%zu; ", s->name.c_str(), s->checks - s->failures, s->checks);
  }
  detail += fmt("mass %.15g, holder max %.4g, content %.3g >= %.3g", w.total_mass, w.holder_max, w.content_bound,
                w.content_explicit);
  return {ok, detail};
}

Outcome criterion_pressure() {
  const double B = 4.0;
  const int M = 20;
  PotentialSpec phi;
  phi.kind = PotentialKind::kPhi1;
  phi.B = B;
  Alphabet A;
  for (Digit d = 1; d <= M; ++d) A.push_back(d);
  PressureRoot root = pressure_root(phi, A, 8, 1e-5);

  // Finite-alphabet trajectory s_{n,1} over {1..20}^n, fitted as s + c/n.
  SumOptions head;
  head.head_only = true;
  head.margin = 0.0;
  std::vector<double> x, y;
  std::string traj;
  for (int n = 4; n <= 6; ++n) {
    PredimRoot r = solve_predim(n, B, 1, std::nullopt, M, 1e-6, head);
    x.push_back(1.0 / n);
    y.push_back(r.s.mid());
    traj += fmt("%.5f ", r.s.mid());
  }
  double mx = (x[0] + x[1] + x[2]) / 3, my = (y[0] + y[1] + y[2]) / 3, sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  double limit = my - (sxy / sxx) * mx;
  double gap = std::abs(limit - root.estimate.mid());

  // Full-system values for reference (not part of the comparison).
  PredimOptions opt;
  opt.M = M;
  PredimResult full = compute_predim(6, B, std::nullopt, opt);
  return {gap <= 0.02, fmt("pressure root [%.6f, %.6f], head-only s_{n,1} n=4..6: %slimit %.5f, gap %.4f; "
                           "full-system s_{6,1} = %.5f",
                           root.estimate.lo, root.estimate.hi, traj.c_str(), limit, gap, full.s1.s.mid())};
}

Outcome criterion_determinism() {
  auto capture = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = run(args, out, err);
    return std::to_string(status) + "\n" + out.str() + err.str();
  };
  std::vector<std::string> csv{"lemmas", "--format", "csv"}, json{"lemmas", "--format", "json"};
  auto with_threads = [](std::string t, std::vector<std::string> a) {
    a.insert(a.begin(), {"--threads", t});
    return a;
  };
  std::string c1 = capture(with_threads("1", csv)), c4 = capture(with_threads("4", csv));
  std::string j1 = capture(with_threads("1", json)), j4 = capture(with_threads("4", json));
  bool ok = c1 == c4 && j1 == j4 && c1.rfind("0\n", 0) == 0;
  return {ok, fmt("csv %zu bytes %s, json %zu bytes %s", c1.size(), c1 == c4 ? "identical" : "DIFFER", j1.size(),
                  j1 == j4 ? "identical" : "DIFFER")};
}

}  // namespace

int main() {
  report(1, "continued-fraction invariants", criterion_cf);
  report(2, "lemma sum ratio", criterion_lemma_sum);
  report(3, "root certification grid", criterion_roots);
  report(4, "level-one oracle", criterion_oracle);
  report(5, "threshold implications", criterion_thresholds);
  report(6, "cover decay", criterion_cover);
  report(7, "witness suite", criterion_witness);
  report(8, "pressure consistency", criterion_pressure);
  report(9, "determinism", criterion_determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
