#include "shrinkdim/massdist.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "shrinkdim/errors.hpp"
#include "shrinkdim/parallel.hpp"
#include "shrinkdim/shrink.hpp"

namespace shrinkdim {

namespace {

constexpr std::uint64_t kBlockBudget = 20000000ULL;
constexpr std::size_t kGapPairLimit = 6000;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// All words of {1..M}^len in lexicographic order, calling f(word).
template <class F>
void for_each_word(int len, int M, F&& f) {
  Word w(static_cast<std::size_t>(len), 1);
  while (true) {
    f(w);
    int i = len - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == static_cast<Digit>(M)) {
      w[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) return;
    ++w[static_cast<std::size_t>(i)];
  }
}

std::uint64_t checked_power(int M, int e, std::uint64_t budget) {
  std::uint64_t v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > budget / static_cast<std::uint64_t>(M)) throw BudgetExceeded("alphabet power exceeds the enumeration budget");
    v *= static_cast<std::uint64_t>(M);
  }
  return v;
}

// Continuant multiplicities over {1..M}^ell.
std::map<BigInt, std::uint64_t> block_continuants(int ell, int M) {
  checked_power(M, ell, kBlockBudget);
  std::map<BigInt, std::uint64_t> counts;
  for_each_word(ell, M, [&](const Word& w) { ++counts[q_of(w)]; });
  return counts;
}

Enclosure case_factor(WitnessCase c, int ell, double s, double B, double rate) {
  Enclosure L = Enclosure::point(ell);
  Enclosure S = Enclosure::point(s);
  Enclosure logB = log(Enclosure::point(B));
  switch (c) {
    case WitnessCase::kI:
      return exp(-(L * S * S * logB));
    case WitnessCase::kII:
      return exp(Enclosure::point(rate) * L * (Enclosure::point(1.0) - S) - L * S * logB);
    case WitnessCase::kIII:
      return exp(-(Enclosure::point(rate) * L * S) - L * S * logB * Enclosure::point(0.5));
  }
  return {1.0, 1.0};
}

Enclosure finite_sum(const std::map<BigInt, std::uint64_t>& counts, WitnessCase c, int ell, double s, double B,
                     double rate) {
  Enclosure sum{0.0, 0.0};
  for (const auto& [q, count] : counts)
    sum += to_enclosure(BigInt(count)) * pow(to_enclosure(q), Enclosure::point(-2.0 * s));
  return sum * case_factor(c, ell, s, B, rate);
}

Enclosure exp_rate(double n, double rate) {
  return exp(Enclosure::point(n) * Enclosure::point(rate));
}

// |y - w| <= rho is inside the solution set for every w in [w_lo, w_hi].
std::pair<Rational, Rational> core_y_range(std::optional<Digit> a1z, const RationalInterval& tz, Digit b,
                                           const Rational& c) {
  Rational bb(to_bigint(b));
  if (!a1z) return {Rational(0), std::min(Rational(1), Rational(c * bb))};
  Rational A(to_bigint(*a1z));
  Rational d = A > bb ? Rational(A - bb) : Rational(bb - A);
  Rational rho;
  if (d != 0) {
    rho = std::min({Rational(c * A * bb / (4 * d)), Rational(d / 2), Rational(bb / 4)});
  } else {
    Rational target = c * A * bb / 4;
    Rational guess(std::sqrt(target.get_d()) * (1.0 - 1e-9));
    while (guess * guess > target) guess /= 2;
    rho = std::min(guess, Rational(bb / 2));
  }
  Rational lo = std::max(Rational(0), Rational(tz.hi - rho));
  Rational hi = std::min(Rational(1), Rational(tz.lo + rho));
  if (hi <= lo) throw PrecisionExhausted("target enclosure too wide for the guaranteed core");
  return {lo, hi};
}

std::pair<Rational, Rational> map_y(const Word& word, const Rational& ylo, const Rational& yhi) {
  Rational a = point_in_cylinder(word, ylo), b = point_in_cylinder(word, yhi);
  if (a > b) std::swap(a, b);
  return {a, b};
}

double pow_d(const Rational& q, double e) { return std::exp(e * std::log(q.get_d())); }

}  // namespace

std::string witness_case_name(WitnessCase c) {
  switch (c) {
    case WitnessCase::kI:
      return "I";
    case WitnessCase::kII:
      return "II";
    case WitnessCase::kIII:
      return "III";
  }
  return "?";
}

WitnessCase parse_witness_case(const std::string& text) {
  if (text == "I" || text == "1") return WitnessCase::kI;
  if (text == "II" || text == "2") return WitnessCase::kII;
  if (text == "III" || text == "3") return WitnessCase::kIII;
  throw InvalidArgument("case must be I, II or III");
}

int WitnessParams::m() const {
  if (ell < 1) throw InvalidArgument("ell must be >= 1");
  if (n < k()) throw InvalidArgument("n must be at least |u|");
  return (n - k()) / ell;
}

int WitnessParams::ell0() const {
  m();
  return (n - k()) % ell;
}

Word WitnessParams::u_tilde() const {
  Word w = u;
  w.insert(w.end(), static_cast<std::size_t>(ell0()), 1);
  return w;
}

Enclosure solve_finite_s(WitnessCase c, int ell, int M, double B, double rate, double tol) {
  if (ell < 1 || M < 1) throw InvalidArgument("ell and M must be >= 1");
  if (!(B > 1)) throw InvalidArgument("B must exceed 1");
  auto counts = block_continuants(ell, M);
  auto f = [&](double s) { return finite_sum(counts, c, ell, s, B, rate); };
  // At s = 0 the sum is M^ell, times e^{rate ell} in Case II.
  bool single = counts.size() == 1 && counts.begin()->second == 1;
  if (single && (c != WitnessCase::kII || rate <= 0.0))
    throw NoRoot("finite sum does not exceed 1 near s = 0; increase M");
  Enclosure at_one = f(1.0);
  if (at_one.lo > 1.0) throw NoRoot("finite sum exceeds 1 at s = 1; no root in (0, 1]");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    Enclosure e = f(mid);
    if (e.lo > 1.0) {
      lo = mid;
    } else if (e.hi < 1.0) {
      hi = mid;
    } else {
      break;
    }
  }
  return {lo, hi};
}

double block_weight(WitnessCase c, const BigInt& q, int ell, double s, double B, double rate) {
  double base = std::pow(q.get_d(), -2.0 * s);
  switch (c) {
    case WitnessCase::kI:
      return base * std::pow(B, -ell * s * s);
    case WitnessCase::kII:
      return base * std::exp(rate * ell * (1.0 - s)) * std::pow(B, -ell * s);
    case WitnessCase::kIII:
      return base * std::exp(-rate * ell * s) * std::pow(B, -0.5 * ell * s);
  }
  return base;
}

std::vector<ParamCheck> check_params(const WitnessParams& p, const Enclosure& s) {
  std::vector<ParamCheck> out;
  auto add = [&](const std::string& name, bool holds, const std::string& detail) {
    out.push_back({name, holds, detail});
  };
  int m = p.m(), k = p.k();
  double t = p.t, eps = p.eps;
  if (!(eps > 0) || !(t > 0)) throw InvalidArgument("t and eps must be positive");
  add("decomposition", m >= 1, "m = " + std::to_string(m) + ", ell0 = " + std::to_string(p.ell0()));
  add("s_above_t_plus_eps", s.lo > t + eps, "s = " + s.str() + ", t + eps = " + fmt(t + eps));
  std::optional<Digit> a1z = p.spec.a1(static_cast<std::size_t>(p.n));
  double n = p.n;
  if (p.wcase == WitnessCase::kI) {
    double need = std::max(std::log(4.0) / std::log(p.B) / eps, 2 * t / eps + 1);
    add("block_length", p.ell > need, "ell = " + std::to_string(p.ell) + " > " + fmt(need));
    add("block_count", m >= k * t / eps, "m = " + std::to_string(m) + " >= " + fmt(k * t / eps));
    double lhs = m * p.ell * s.lo * s.lo;
    add("exponent", lhs >= n * t * t, "m ell s^2 = " + fmt(lhs) + " >= n t^2 = " + fmt(n * t * t));
    Enclosure four_pow = Enclosure::point(4.0) * exp(Enclosure::point(n * t) * log(Enclosure::point(p.B)));
    bool ok = !a1z || to_enclosure(to_bigint(*a1z)).lo >= four_pow.hi;
    add("first_digit_large", ok, "a1(z_n) >= 4 B^{nt} = " + fmt(four_pow.hi));
  } else {
    double need = 2 * t / eps + 1;
    add("block_length", p.ell >= need, "ell = " + std::to_string(p.ell) + " >= " + fmt(need));
    double ml = m * p.ell;
    add("window", n * (1 - eps) <= ml && ml <= n, "n(1-eps) <= m ell <= n with m ell = " + fmt(ml));
    add("level_gap", p.n - k >= p.ell, "n - k >= ell");
    if (!a1z) {
      add("first_digit_window", false, "a1(z_n) is infinite");
    } else {
      Enclosure a = to_enclosure(to_bigint(*a1z));
      Enclosure lo = exp_rate(n, p.rate - eps), hi = exp_rate(n, p.rate + eps);
      add("first_digit_window", lo.hi <= a.lo && a.hi <= hi.lo,
          "e^{n(rate-eps)} <= a1(z_n) <= e^{n(rate+eps)}, a1 = " + std::to_string(*a1z));
      if (p.wcase == WitnessCase::kIII) {
        Enclosure half = exp(Enclosure::point(0.5 * n) * log(Enclosure::point(p.B)));
        add("first_digit_below_root", a.hi <= half.lo, "a1(z_n) <= B^{n/2}");
      }
    }
  }
  return out;
}

LastEntries last_entries(const WitnessParams& p) {
  LastEntries le;
  double n = p.n;
  auto evens = [&](const Enclosure& lo, const Enclosure& hi) {
    if (hi.hi > 1e7) throw BudgetExceeded("last-entry range too large");
    auto first = static_cast<std::uint64_t>(std::floor(lo.lo));
    auto last = static_cast<std::uint64_t>(std::ceil(hi.hi));
    for (std::uint64_t b = first; b <= last; ++b) {
      if (b == 0 || b % 2 != 0) continue;
      double v = static_cast<double>(b);
      bool in = v >= lo.hi && v <= hi.lo;
      bool out = v < lo.lo || v > hi.hi;
      if (!in && !out) throw PrecisionExhausted("last-entry range endpoint too close to an even integer");
      if (in) le.digits.push_back(b);
    }
  };
  switch (p.wcase) {
    case WitnessCase::kI: {
      Enclosure e = exp(Enclosure::point(n) * Enclosure::point(p.t) * log(Enclosure::point(p.B)));
      evens(e, Enclosure::point(2.0) * e);
      le.nominal_weight = 2.0 / e.mid();
      break;
    }
    case WitnessCase::kII: {
      Enclosure e = exp_rate(n, p.rate + p.eps);
      evens(Enclosure::point(2.0) * e, Enclosure::point(3.0) * e);
      le.nominal_weight = 2.0 / e.mid();
      break;
    }
    case WitnessCase::kIII: {
      auto a1z = p.spec.a1(static_cast<std::size_t>(p.n));
      if (!a1z) throw Inapplicable("Case III needs a finite first digit of z_n");
      le.digits.push_back(*a1z);
      le.nominal_weight = 1.0;
      break;
    }
  }
  if (le.digits.empty()) throw InvalidArgument("no admissible last entry");
  return le;
}

std::vector<FundamentalInterval> enumerate_fundamental(const WitnessParams& p, std::uint64_t budget) {
  int m = p.m();
  Word ut = p.u_tilde();
  LastEntries le = last_entries(p);
  std::uint64_t words = checked_power(p.M, m * p.ell, budget);
  if (words * le.digits.size() > budget) throw BudgetExceeded("fundamental interval count exceeds the budget");
  TargetValue zv = z_value(p.spec, static_cast<std::size_t>(p.n));
  Rational c = base_power_inv(p.B, p.n);
  std::vector<Word> all;
  all.reserve(words);
  for_each_word(m * p.ell, p.M, [&](const Word& w) { all.push_back(w); });
  std::vector<FundamentalInterval> out(all.size() * le.digits.size());
  parallel_for(all.size(), [&](std::size_t i) {
    Word prefix = concat(ut, all[i]);
    BigInt qn = q_of(prefix);
    for (std::size_t j = 0; j < le.digits.size(); ++j) {
      Digit b = le.digits[j];
      FundamentalInterval& f = out[i * le.digits.size() + j];
      f.blocks = all[i];
      f.last = b;
      f.qn = qn;
      Word full = prefix;
      full.push_back(b);
      f.cylinder_length = cylinder(full).length();
      bool done = false;
      if (p.exact_solving && zv.tz.is_exact()) {
        JSolution sol = solve_j(prefix, b, zv.a1, zv.tz.lo, p.B);
        const FuzzyInterval* best = nullptr;
        for (const auto& comp : sol.components)
          if (!best || comp.min_length() > best->min_length()) best = &comp;
        if (best && best->min_length() > 0) {
          f.left = best->left.hi;
          f.right = best->right.lo;
          f.exact = true;
          done = true;
        }
      }
      if (!done) {
        auto [ylo, yhi] = core_y_range(zv.a1, zv.tz, b, c);
        std::tie(f.left, f.right) = map_y(full, ylo, yhi);
        f.exact = false;
      }
    }
  });
  std::sort(out.begin(), out.end(),
            [](const FundamentalInterval& a, const FundamentalInterval& b) { return a.left < b.left; });
  return out;
}

double Witness::total_mass() const {
  double s = 0.0;
  for (double v : mass) s += v;
  return s;
}

Witness build_witness(const WitnessParams& p, std::uint64_t budget) {
  Witness w;
  w.params = p;
  w.s = solve_finite_s(p.wcase, p.ell, p.M, p.B, p.rate);
  w.s_value = w.s.mid();
  w.checks = check_params(p, w.s);
  if (!p.override_asymptotic) {
    for (const auto& c : w.checks)
      if (!c.holds) throw ParameterViolation(c.name + ": " + c.detail);
  }
  auto counts = block_continuants(p.ell, p.M);
  Enclosure at_lo = finite_sum(counts, p.wcase, p.ell, w.s.lo, p.B, p.rate);
  Enclosure at_hi = finite_sum(counts, p.wcase, p.ell, w.s.hi, p.B, p.rate);
  w.block_sum = {std::min(at_lo.lo, at_hi.lo), std::max(at_lo.hi, at_hi.hi)};
  w.last = last_entries(p);
  w.last_weight = 1.0 / static_cast<double>(w.last.digits.size());
  w.nominal_last_total = static_cast<double>(w.last.digits.size()) * w.last.nominal_weight;
  w.intervals = enumerate_fundamental(p, budget);
  w.root_length = cylinder(p.u_tilde()).length();
  w.mass.resize(w.intervals.size());
  for (std::size_t i = 0; i < w.intervals.size(); ++i) w.mass[i] = measure_of(w, w.intervals[i].blocks) * w.last_weight;
  return w;
}

double measure_of(const Witness& w, const Word& blocks) {
  const WitnessParams& p = w.params;
  if (blocks.size() % static_cast<std::size_t>(p.ell) != 0) throw InvalidArgument("address is not a whole number of blocks");
  double mass = 1.0;
  for (std::size_t i = 0; i < blocks.size(); i += static_cast<std::size_t>(p.ell)) {
    Word block(blocks.begin() + static_cast<std::ptrdiff_t>(i), blocks.begin() + static_cast<std::ptrdiff_t>(i + p.ell));
    mass *= block_weight(p.wcase, q_of(block), p.ell, w.s_value, p.B, p.rate);
  }
  return mass;
}

double measure_of_ball(const Witness& w, const Rational& x, const Rational& r) {
  Rational lo = x - r, hi = x + r;
  const auto& iv = w.intervals;
  auto it = std::lower_bound(iv.begin(), iv.end(), lo,
                             [](const FundamentalInterval& f, const Rational& v) { return f.right < v; });
  double total = 0.0;
  for (; it != iv.end() && it->left <= hi; ++it) {
    Rational a = std::max(it->left, lo), b = std::min(it->right, hi);
    if (b <= a) continue;
    Rational frac = (b - a) / it->length();
    total += w.mass[static_cast<std::size_t>(it - iv.begin())] * frac.get_d();
  }
  return total;
}

MembershipReport membership_samples(const Witness& w, int per_interval) {
  const WitnessParams& p = w.params;
  MembershipReport rep;
  rep.intervals = w.intervals.size();
  std::vector<std::size_t> fail(w.intervals.size()), unknown(w.intervals.size());
  parallel_for(w.intervals.size(), [&](std::size_t i) {
    const FundamentalInterval& f = w.intervals[i];
    Word full = concat(concat(p.u_tilde(), f.blocks), {f.last});
    CylinderInterval cyl = cylinder(full);
    for (int j = 1; j <= per_interval; ++j) {
      Rational x = f.left + f.length() * Rational(j, per_interval + 1);
      x.canonicalize();
      if (!cyl.contains(x)) {
        ++fail[i];
        continue;
      }
      Tri t = membership_verdict(x, p.spec, p.B, p.n);
      if (t == Tri::kFalse) ++fail[i];
      if (t == Tri::kInconclusive) ++unknown[i];
    }
  });
  rep.samples = w.intervals.size() * static_cast<std::size_t>(per_interval);
  for (std::size_t i = 0; i < w.intervals.size(); ++i) {
    rep.failures += fail[i];
    rep.inconclusive += unknown[i];
  }
  return rep;
}

GapReport gap_check(const Witness& w) {
  const WitnessParams& p = w.params;
  const auto& iv = w.intervals;
  if (iv.size() > kGapPairLimit) throw BudgetExceeded("too many fundamental intervals for the exhaustive gap check");
  int m = p.m();
  Word ut = p.u_tilde();
  Rational block_div = 2 * Rational(p.M + 2) * (p.M + 2) * (p.M + 2) * (p.M + 2);
  Rational last_div = p.wcase == WitnessCase::kII ? Rational(18) : Rational(32);
  // |I_{k+ell0+p ell}(u~, a_1..a_p)| for p = 1..m
  std::vector<std::vector<Rational>> block_len(iv.size());
  parallel_for(iv.size(), [&](std::size_t i) {
    for (int q = 1; q <= m; ++q) {
      Word w2 = ut;
      w2.insert(w2.end(), iv[i].blocks.begin(), iv[i].blocks.begin() + q * p.ell);
      block_len[i].push_back(cylinder(w2).length());
    }
  });
  struct Partial {
    std::size_t block_pairs = 0, last_pairs = 0, violations = 0;
    double worst_block = INFINITY, worst_last = INFINITY;
  };
  std::vector<Partial> parts(iv.size());
  parallel_for(iv.size(), [&](std::size_t i) {
    Partial& pt = parts[i];
    for (std::size_t j = i + 1; j < iv.size(); ++j) {
      const FundamentalInterval &a = iv[i], &b = iv[j];
      Rational dist = b.left > a.right ? Rational(b.left - a.right) : Rational(0);
      if (a.left > b.right) dist = a.left - b.right;
      std::size_t idx = 0;
      while (idx < a.blocks.size() && a.blocks[idx] == b.blocks[idx]) ++idx;
      Rational need;
      bool last_pair = idx == a.blocks.size();
      if (last_pair) {
        need = std::max(a.cylinder_length, b.cylinder_length) / last_div;
        ++pt.last_pairs;
      } else {
        std::size_t q = idx / static_cast<std::size_t>(p.ell);
        need = std::max(block_len[i][q], block_len[j][q]) / block_div;
        ++pt.block_pairs;
      }
      if (dist < need) ++pt.violations;
      double ratio = Rational(dist / need).get_d();
      double& worst = last_pair ? pt.worst_last : pt.worst_block;
      worst = std::min(worst, ratio);
    }
  });
  GapReport rep;
  for (const auto& pt : parts) {
    rep.block_pairs += pt.block_pairs;
    rep.last_pairs += pt.last_pairs;
    rep.violations += pt.violations;
    rep.worst_block_ratio = std::min(rep.worst_block_ratio, pt.worst_block);
    rep.worst_last_ratio = std::min(rep.worst_last_ratio, pt.worst_last);
  }
  rep.pairs = rep.block_pairs + rep.last_pairs;
  return rep;
}

MeasureBoundReport measure_bounds(const Witness& w) {
  const WitnessParams& p = w.params;
  MeasureBoundReport rep;
  int m = p.m();
  Word ut = p.u_tilde();
  double t = p.t;
  double root_t = pow_d(w.root_length, t);
  bool case_one = p.wcase == WitnessCase::kI;
  std::optional<Digit> a1z = p.spec.a1(static_cast<std::size_t>(p.n));
  Enclosure logB = log(Enclosure::point(p.B));
  Enclosure n = Enclosure::point(p.n);
  // Block-cylinder bound, once per distinct block address.
  std::map<Word, bool> seen;
  for (const auto& f : w.intervals) {
    for (int q = 0; q <= m; ++q) {
      Word blocks(f.blocks.begin(), f.blocks.begin() + q * p.ell);
      if (!seen.emplace(blocks, true).second) continue;
      double mu = measure_of(w, blocks);
      double qv = q_of(concat(ut, blocks)).get_d();
      double bound = std::pow(qv, -2 * t) / root_t;
      ++rep.cylinder_checks;
      rep.cylinder_constant = std::max(rep.cylinder_constant, mu / bound);
      if (case_one && mu > bound) ++rep.cylinder_violations;
    }
  }
  for (std::size_t i = 0; i < w.intervals.size(); ++i) {
    const auto& f = w.intervals[i];
    double len = f.length().get_d();
    double ratio = w.mass[i] * root_t / std::pow(len, t);
    ++rep.interval_checks;
    rep.interval_constant = std::max(rep.interval_constant, ratio);
    if (case_one && ratio > 64.0) ++rep.interval_violations;
    Enclosure q2 = to_enclosure(BigInt(f.qn * f.qn));
    Enclosure bound;
    switch (p.wcase) {
      case WitnessCase::kI:
        bound = Enclosure::point(1.0) /
                (Enclosure::point(32.0) * q2 * exp(n * (Enclosure::point(1.0) + Enclosure::point(t)) * logB));
        break;
      case WitnessCase::kII:
        bound = Enclosure::point(1.0) / (Enclosure::point(48.0) * exp(Enclosure::point(2.0) * n * Enclosure::point(p.eps)) *
                                         q2 * to_enclosure(to_bigint(f.last)) * exp(n * logB));
        break;
      case WitnessCase::kIII:
        bound = exp(-(n * logB * Enclosure::point(0.5))) /
                (Enclosure::point(4.0) * q2 * to_enclosure(to_bigint(a1z.value_or(f.last))));
        break;
    }
    if (to_enclosure(f.length()).lo < bound.hi) ++rep.length_violations;
  }
  return rep;
}

std::vector<HolderSample> holder_samples(const Witness& w, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, w.intervals.size() - 1);
  Rational min_len = w.intervals.front().length();
  for (const auto& f : w.intervals) min_len = std::min(min_len, f.length());
  double log_lo = std::log(min_len.get_d() / 8.0);
  double log_hi = std::log(2.0 * w.root_length.get_d());
  const std::size_t strata = 16;
  CylinderInterval root = cylinder(w.params.u_tilde());
  std::vector<HolderSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double stratum = static_cast<double>(i % strata);
    double lr = log_lo + (log_hi - log_lo) * (stratum + unit(rng)) / static_cast<double>(strata);
    HolderSample hs;
    hs.r = Rational(std::exp(lr));
    if (i % 10 < 8) {
      const auto& f = w.intervals[pick(rng)];
      hs.x = f.left + f.length() * Rational(unit(rng));
    } else {
      hs.x = root.left + root.length() * Rational(unit(rng));
    }
    hs.x.canonicalize();
    out.push_back(hs);
  }
  return out;
}

HolderReport holder_check(const Witness& w, const std::vector<HolderSample>& samples) {
  const WitnessParams& p = w.params;
  HolderReport rep;
  double M2 = p.M + 2;
  rep.lemma_constant = 16.0 * std::pow(M2, 4) * std::pow(p.M + 1.0, 2.0 * p.ell);
  rep.samples = samples.size();
  const std::size_t regimes = 5;  // large, single interval, level n, block levels, off support
  rep.max_ratio_by_regime.assign(regimes, 0.0);
  rep.count_by_regime.assign(regimes, 0);
  double root_t = pow_d(w.root_length, p.t);
  Rational last_div = p.wcase == WitnessCase::kII ? Rational(18) : Rational(32);
  Rational block_div = 2 * Rational(p.M + 2) * (p.M + 2) * (p.M + 2) * (p.M + 2);
  Word ut = p.u_tilde();
  std::vector<double> ratio(samples.size());
  std::vector<std::size_t> regime(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const HolderSample& hs = samples[i];
    double mu = measure_of_ball(w, hs.x, hs.r);
    ratio[i] = mu * root_t / pow_d(hs.r, p.t);
    if (hs.r >= w.root_length) {
      regime[i] = 0;
      return;
    }
    auto it = std::upper_bound(w.intervals.begin(), w.intervals.end(), hs.x,
                               [](const Rational& v, const FundamentalInterval& f) { return v < f.left; });
    if (it == w.intervals.begin() || std::prev(it)->right < hs.x) {
      regime[i] = 4;
      return;
    }
    const FundamentalInterval& f = *std::prev(it);
    if (hs.r <= f.cylinder_length / last_div) {
      regime[i] = 1;
    } else if (hs.r <= cylinder(concat(ut, f.blocks)).length() / block_div) {
      regime[i] = 2;
    } else {
      regime[i] = 3;
    }
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rep.max_ratio = std::max(rep.max_ratio, ratio[i]);
    rep.max_ratio_by_regime[regime[i]] = std::max(rep.max_ratio_by_regime[regime[i]], ratio[i]);
    ++rep.count_by_regime[regime[i]];
  }
  return rep;
}

ContentBound content_lower_bound(const Witness& w, const HolderReport& h) {
  const WitnessParams& p = w.params;
  ContentBound cb;
  double scale = pow_d(w.root_length, p.t) * w.total_mass();
  cb.bound = scale / h.lemma_constant;
  cb.empirical = h.max_ratio > 0 ? scale / h.max_ratio : INFINITY;
  double denom = std::pow(2.0, p.ell + 8) * std::pow(p.M + 2.0, 4) * std::pow(p.M + 1.0, 2.0 * p.ell);
  cb.explicit_form = cylinder(p.u).length().get_d() / denom;
  return cb;
}

}  // namespace shrinkdim
