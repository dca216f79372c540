#include "shrinkdim/sums.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "shrinkdim/errors.hpp"
#include "shrinkdim/parallel.hpp"

namespace shrinkdim {

namespace {

constexpr std::uint64_t kExactLimit = 1ULL << 17;
constexpr std::uint64_t kSubBins = 1ULL << 16;
constexpr std::uint64_t kZetaHead = 1ULL << 14;
constexpr std::size_t kHistogramTasks = 16;

Enclosure one() { return Enclosure::point(1.0); }

// Integral of x^{-2s} over [X, inf).
Enclosure power_integral(double s, double X) {
  Enclosure expo = Enclosure::point(1.0) - Enclosure::point(2.0 * s);
  Enclosure denom = Enclosure::point(2.0 * s) - Enclosure::point(1.0);
  return pow(Enclosure::point(X), expo) / denom;
}

// Sum of a^{-2s} for a in [first, last].
Enclosure power_range(double s, std::uint64_t first, std::uint64_t last) {
  Enclosure acc{0.0, 0.0};
  for (std::uint64_t a = last; a >= first && a > 0; --a) {
    acc += pow_exact_base(static_cast<double>(a), -2.0 * s);
    if (a == first) break;
  }
  return acc;
}

// Sum over a > K of a^{-2s} for the convex decreasing summand:
// midpoint rule above, trapezoid rule below.
Enclosure convex_tail(double s, std::uint64_t K) {
  double k1 = static_cast<double>(K) + 1.0;
  Enclosure lo = power_integral(s, k1) + scale_nonneg(pow_exact_base(k1, -2.0 * s), 0.5);
  Enclosure hi = power_integral(s, static_cast<double>(K) + 0.5);
  return {lo.lo, hi.hi};
}

void walk(int remaining, std::uint64_t q_prev, std::uint64_t q_cur, int M, std::vector<std::uint64_t>& counts) {
  if (remaining == 1) {
    std::uint64_t q = q_cur + q_prev;
    for (int a = 1; a <= M; ++a, q += q_cur) ++counts[ContinuantHistogram::bin_index(q)];
    return;
  }
  for (int a = 1; a <= M; ++a) walk(remaining - 1, q_cur, static_cast<std::uint64_t>(a) * q_cur + q_prev, M, counts);
}

std::mutex g_hist_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const ContinuantHistogram>> g_hist_cache;

std::mutex g_sum_mutex;
std::map<std::tuple<int, int, double, bool>, Enclosure> g_sum_cache;

std::mutex g_zeta_mutex;
std::map<std::pair<double, std::uint64_t>, Enclosure> g_zeta_cache;

}  // namespace

Enclosure WeightSpec::factor(double s) const {
  Enclosure S = Enclosure::point(s);
  Enclosure nn = Enclosure::point(static_cast<double>(n));
  Enclosure logB = log(Enclosure::point(B));
  switch (kind) {
    case WeightKind::kUnit:
      return one();
    case WeightKind::kPre1:
      return exp(-(nn * sqr(S) * logB));
    case WeightKind::kPre2: {
      if (!a1z) throw InvalidArgument("PRE2 weight with a1z = infinity is defined by convention, not summed");
      Enclosure loga = log(to_enclosure(to_bigint(*a1z)));
      return exp((one() - S) * loga - nn * S * logB);
    }
    case WeightKind::kPre3: {
      if (!a1z) throw InvalidArgument("PRE3 weight with a1z = infinity is defined by convention, not summed");
      Enclosure loga = log(to_enclosure(to_bigint(*a1z)));
      return exp(-(S * loga) - scale_nonneg(nn * S * logB, 0.5));
    }
  }
  return one();
}

std::uint64_t ContinuantHistogram::bin_index(std::uint64_t q) {
  if (q < kExactLimit) return q;
  int e = std::bit_width(q) - 1;
  int shift = e - 16;
  return kExactLimit + static_cast<std::uint64_t>(e - 17) * kSubBins + ((q >> shift) - kSubBins);
}

std::pair<std::uint64_t, std::uint64_t> ContinuantHistogram::bin_range(std::uint64_t idx) {
  if (idx < kExactLimit) return {idx, idx};
  std::uint64_t k = idx - kExactLimit;
  int e = 17 + static_cast<int>(k / kSubBins);
  std::uint64_t m = k % kSubBins + kSubBins;
  int shift = e - 16;
  return {m << shift, ((m + 1) << shift) - 1};
}

ContinuantHistogram::ContinuantHistogram(int n, int M) : n_(n), M_(M) {
  if (n < 1 || M < 1) throw InvalidArgument("histogram needs n >= 1 and M >= 1");
  double total = std::pow(static_cast<double>(M), n);
  if (total > static_cast<double>(kWordBudget))
    throw BudgetExceeded("|{1..M}^n| = " + std::to_string(total) + " exceeds the word budget");
  words_ = 1;
  for (int i = 0; i < n; ++i) words_ *= static_cast<std::uint64_t>(M);

  // Largest continuant is that of M^n.
  std::uint64_t qp = 1, qc = static_cast<std::uint64_t>(M);
  for (int i = 1; i < n; ++i) {
    if (qc > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(M + 1))
      throw BudgetExceeded("continuants exceed 62 bits");
    std::uint64_t nx = static_cast<std::uint64_t>(M) * qc + qp;
    qp = qc;
    qc = nx;
  }
  std::size_t size = bin_index(qc) + 1;

  std::size_t tasks = std::min<std::size_t>(kHistogramTasks, static_cast<std::size_t>(M));
  std::vector<std::vector<std::uint64_t>> partial(tasks);
  parallel_for(tasks, [&](std::size_t t) {
    auto& counts = partial[t];
    counts.assign(size, 0);
    for (int a = static_cast<int>(t) + 1; a <= M; a += static_cast<int>(tasks)) {
      if (n == 1)
        ++counts[bin_index(static_cast<std::uint64_t>(a))];
      else
        walk(n - 1, 1, static_cast<std::uint64_t>(a), M, counts);
    }
  });
  std::vector<std::uint64_t> counts(size, 0);
  for (const auto& p : partial)
    for (std::size_t i = 0; i < size; ++i) counts[i] += p[i];
  for (std::size_t i = 0; i < size; ++i) {
    if (!counts[i]) continue;
    auto [lo, hi] = bin_range(i);
    bins_.push_back({lo, hi, counts[i]});
  }
}

std::shared_ptr<const ContinuantHistogram> ContinuantHistogram::get(int n, int M) {
  auto key = std::make_pair(n, M);
  {
    std::lock_guard<std::mutex> lock(g_hist_mutex);
    auto it = g_hist_cache.find(key);
    if (it != g_hist_cache.end()) return it->second;
  }
  auto h = std::make_shared<const ContinuantHistogram>(n, M);
  std::lock_guard<std::mutex> lock(g_hist_mutex);
  return g_hist_cache.emplace(key, h).first->second;
}

Enclosure ContinuantHistogram::power_sum(double s) const {
  const double e = -2.0 * s;
  Enclosure acc{0.0, 0.0};
  // pow at hi + 1 of the previous bin doubles as pow at lo of the next one.
  std::uint64_t cached_at = 0;
  Enclosure cached{0.0, 0.0};
  for (const Bin& b : bins_) {
    double c = static_cast<double>(b.count);
    Enclosure at_lo = (cached_at == b.lo) ? cached : pow_exact_base(static_cast<double>(b.lo), e);
    if (b.lo == b.hi) {
      acc += scale_nonneg(at_lo, c);
      cached_at = 0;
      continue;
    }
    Enclosure past_hi = pow_exact_base(static_cast<double>(b.hi + 1), e);
    acc += scale_nonneg(Enclosure{past_hi.lo, at_lo.hi}, c);
    cached_at = b.hi + 1;
    cached = past_hi;
  }
  return acc;
}

Enclosure head_power_sum(int n, double s, int M) {
  if (n == 0) return one();
  return ContinuantHistogram::get(n, M)->power_sum(s);
}

Enclosure zeta_tail(double s, std::uint64_t from) {
  if (!(s > 0.5)) throw ExponentTooSmall("zeta tail diverges for s <= 1/2");
  auto key = std::make_pair(s, from);
  {
    std::lock_guard<std::mutex> lock(g_zeta_mutex);
    auto it = g_zeta_cache.find(key);
    if (it != g_zeta_cache.end()) return it->second;
  }
  std::uint64_t K = std::max(kZetaHead, from);
  Enclosure r = convex_tail(s, K);
  if (K > from) r = power_range(s, from + 1, K) + r;
  std::lock_guard<std::mutex> lock(g_zeta_mutex);
  g_zeta_cache.emplace(key, r);
  return r;
}

Enclosure zeta_enclosure(double s, std::uint64_t K) {
  if (!(s > 0.5)) throw ExponentTooSmall("zeta(2s) diverges for s <= 1/2");
  if (K < 2) throw InvalidArgument("zeta head length must be >= 2");
  return power_range(s, 1, K) + convex_tail(s, K);
}

Enclosure continuant_power_sum(int n, double s, int M, const SumOptions& opt) {
  if (n < 1) throw InvalidArgument("level n must be >= 1");
  if (M < 1) throw InvalidArgument("alphabet cutoff M must be >= 1");
  if (!opt.head_only && !(s > 0.5 + opt.margin))
    throw ExponentTooSmall("s must exceed 1/2 + margin for the sum over N^n to converge");
  auto key = std::make_tuple(n, M, s, opt.head_only);
  {
    std::lock_guard<std::mutex> lock(g_sum_mutex);
    auto it = g_sum_cache.find(key);
    if (it != g_sum_cache.end()) return it->second;
  }
  Enclosure head = head_power_sum(n, s, M);
  Enclosure result = head;
  if (!opt.head_only) {
    if (n > 24) throw BudgetExceeded("tail bracket enumerates 2^n position sets; n must be <= 24");
    std::vector<Enclosure> block(static_cast<std::size_t>(n));
    for (int L = 0; L < n; ++L) block[static_cast<std::size_t>(L)] = head_power_sum(L, s, M);
    Enclosure big = zeta_tail(s, static_cast<std::uint64_t>(M));
    std::vector<Enclosure> shifted = {big, zeta_tail(s, static_cast<std::uint64_t>(M) + 1),
                                      zeta_tail(s, static_cast<std::uint64_t>(M) + 2)};
    double tail_lo = 0.0, tail_hi = 0.0;
    Enclosure tail{0.0, 0.0};
    // mask bit j-1 set: position j carries a digit > M.
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Enclosure up = one(), down = one();
      int run = 0;
      for (int j = 1; j <= n; ++j) {
        bool big_here = mask & (1u << (j - 1));
        if (!big_here) {
          ++run;
          continue;
        }
        Enclosure f = block[static_cast<std::size_t>(run)];
        up = up * Enclosure{f.hi, f.hi} * Enclosure{big.hi, big.hi};
        int shift = (j > 1) + (j < n && !(mask & (1u << j)));
        Enclosure lo_digit = shifted[static_cast<std::size_t>(shift)];
        down = down * Enclosure{f.lo, f.lo} * Enclosure{lo_digit.lo, lo_digit.lo};
        run = 0;
      }
      Enclosure f = block[static_cast<std::size_t>(run)];
      up = up * Enclosure{f.hi, f.hi};
      down = down * Enclosure{f.lo, f.lo};
      tail += Enclosure{down.lo, up.hi};
    }
    tail_lo = tail.lo;
    tail_hi = tail.hi;
    result = {(head + Enclosure{tail_lo, tail_lo}).lo, (head + Enclosure{tail_hi, tail_hi}).hi};
  }
  std::lock_guard<std::mutex> lock(g_sum_mutex);
  g_sum_cache.emplace(key, result);
  return result;
}

Enclosure continuant_sum_enclosure(int n, double s, const WeightSpec& w, int M, const SumOptions& opt) {
  if (!opt.head_only && !(s > 0.5 + opt.margin))
    throw ExponentTooSmall("s must exceed 1/2 + margin for the sum over N^n to converge");
  Enclosure sum = continuant_power_sum(n, s, M, opt);
  Enclosure r = sum * w.factor(s);
  if (!opt.head_only && r.width() > opt.max_relative_width * r.lo)
    throw CutoffTooSmall("tail bracket too wide at M = " + std::to_string(M) + "; raise the cutoff");
  return r;
}

Enclosure lemma_sum(Digit a, double t, std::uint64_t cutoff) {
  if (a == 0) throw InvalidArgument("a must be a positive integer");
  if (!(t > 0.5)) throw ExponentTooSmall("lemma sum needs t > 1/2");
  if (cutoff < 4 * a) throw InvalidArgument("cutoff must be >= 4a");
  if (static_cast<double>(cutoff) * static_cast<double>(cutoff) > 9.0e15)
    throw BudgetExceeded("cutoff too large for exact products b|a-b|");
  Enclosure head{0.0, 0.0};
  for (std::uint64_t b = cutoff; b >= 1; --b) {
    if (b == a) continue;
    std::uint64_t d = b > a ? b - a : a - b;
    head += pow_exact_base(static_cast<double>(b * d), -t);
  }
  // For b > C write b(b - a) = x^2 - a^2/4 with x = b - a/2 >= C + 1 - a/2.
  double C = static_cast<double>(cutoff);
  double half_a = 0.5 * static_cast<double>(a);
  Enclosure T = Enclosure::point(t);
  Enclosure two_t_minus_1 = Enclosure::point(2.0 * t) - one();
  Enclosure x1 = Enclosure::point(C + 1.0) - Enclosure::point(half_a);
  Enclosure xh = Enclosure::point(C + 0.5) - Enclosure::point(half_a);
  Enclosure lower = pow(x1, one() - Enclosure::point(2.0 * t)) / two_t_minus_1 +
                    scale_nonneg(pow(x1, Enclosure::point(-2.0 * t)), 0.5);
  Enclosure kappa = sqr(Enclosure::point(half_a)) / sqr(x1);
  Enclosure upper = pow(one() - kappa, -T) * pow(xh, one() - Enclosure::point(2.0 * t)) / two_t_minus_1;
  Enclosure tail{lower.lo, upper.hi};
  return pow_exact_base(static_cast<double>(a), t) * (head + tail);
}

}  // namespace shrinkdim
