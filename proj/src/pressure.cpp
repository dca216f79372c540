#include "shrinkdim/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "shrinkdim/errors.hpp"
#include "shrinkdim/predim.hpp"

namespace shrinkdim {

namespace {

constexpr std::uint64_t kBins = 512;
constexpr std::size_t kGrid = kBins + 2;

// Continuants of a word v = v_1..v_L used when v is glued after a prefix:
// full = q(v_1..v_L), tail = q(v_2..v_L), head = q(v_1..v_{L-1}),
// inner = q(v_2..v_{L-1}), with q of an empty word 1 and of a "negative"
// word 0.
struct Row {
  std::uint64_t full, tail, head, inner;
};

std::uint64_t cont(const Digit* d, int len) {
  if (len < 0) return 0;
  std::uint64_t a = 0, b = 1;  // q_{-1}, q_0
  for (int i = 0; i < len; ++i) {
    std::uint64_t c = d[i] * b + a;
    a = b;
    b = c;
  }
  return b;
}

using Table = std::vector<Row>;

std::mutex g_table_mutex;
std::map<std::pair<Alphabet, int>, std::shared_ptr<const Table>> g_tables;

std::shared_ptr<const Table> word_table(const Alphabet& A, int L) {
  auto key = std::make_pair(A, L);
  {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    auto it = g_tables.find(key);
    if (it != g_tables.end()) return it->second;
  }
  double count = std::pow(static_cast<double>(A.size()), L);
  if (count > kHalfWordLimit) throw DepthTooLarge("|A|^" + std::to_string(L) + " exceeds the enumeration budget");
  // Largest continuant must stay exactly representable in a double.
  Word big(static_cast<std::size_t>(L), A.back());
  if (std::log2(static_cast<double>(cont(big.data(), L))) > 52 ||
      static_cast<double>(L) * std::log2(static_cast<double>(A.back()) + 1.0) > 52)
    throw DepthTooLarge("continuants exceed 2^52");
  auto t = std::make_shared<Table>();
  t->reserve(static_cast<std::size_t>(count));
  std::vector<std::size_t> idx(static_cast<std::size_t>(L), 0);
  Word w(static_cast<std::size_t>(L), A.front());
  for (;;) {
    t->push_back({cont(w.data(), L), cont(w.data() + 1, L - 1), cont(w.data(), L - 1), cont(w.data() + 1, L - 2)});
    int k = L - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] + 1 == A.size()) {
      idx[static_cast<std::size_t>(k)] = 0;
      w[static_cast<std::size_t>(k)] = A.front();
      --k;
    }
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
    w[static_cast<std::size_t>(k)] = A[idx[static_cast<std::size_t>(k)]];
  }
  std::lock_guard<std::mutex> lock(g_table_mutex);
  return g_tables.emplace(key, t).first->second;
}

// log(1 + i j / kBins^2), exact argument, shared by every s.
const std::vector<Enclosure>& log_grid() {
  static const std::vector<Enclosure> grid = [] {
    std::vector<Enclosure> g(kGrid * kGrid);
    double scale = 1.0 / static_cast<double>(kBins * kBins);
    for (std::size_t i = 0; i < kGrid; ++i)
      for (std::size_t j = 0; j < kGrid; ++j)
        g[i * kGrid + j] = log(Enclosure::point(1.0 + static_cast<double>(i * j) * scale));
    return g;
  }();
  return grid;
}

const std::vector<double>& center_log_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g(kGrid * kGrid);
    double scale = 1.0 / static_cast<double>(kBins * kBins);
    for (std::size_t i = 0; i < kGrid; ++i)
      for (std::size_t j = 0; j < kGrid; ++j)
        g[i * kGrid + j] = std::log1p((static_cast<double>(i) + 0.5) * (static_cast<double>(j) + 0.5) * scale);
    return g;
  }();
  return grid;
}

// Per-s factor tables (1 + rho tau)^{-2s}: upper at bin corners (i, j),
// lower at (i + 1, j + 1), estimate at bin centres.
struct Factors {
  double s = -1.0;
  std::vector<double> up, down, mid;
};

const Factors& factors_for(double s) {
  thread_local Factors f;
  if (f.s == s) return f;
  const auto& g = log_grid();
  const auto& c = center_log_grid();
  f.up.assign(kGrid * kGrid, 0.0);
  f.down.assign(kGrid * kGrid, 0.0);
  f.mid.assign(kGrid * kGrid, 0.0);
  Enclosure m2s = Enclosure::point(-2.0 * s);
  for (std::size_t i = 0; i + 1 < kGrid; ++i)
    for (std::size_t j = 0; j + 1 < kGrid; ++j) {
      std::size_t k = i * kGrid + j;
      // -2s log(.) is decreasing, so each end needs a single exp.
      double arg_up = (m2s * Enclosure::point(g[k].lo)).hi;
      double arg_down = (m2s * Enclosure::point(g[(i + 1) * kGrid + j + 1].hi)).lo;
      f.up[k] = round_up(std::exp(arg_up), 2);
      f.down[k] = std::max(0.0, round_down(std::exp(arg_down), 2));
      f.mid[k] = std::exp(-2.0 * s * c[k]);
    }
  f.s = s;
  return f;
}

bool integral_x(double x) { return x == 0.0 || x == 1.0; }

Alphabet normalized(const Alphabet& A) {
  if (A.empty()) throw InvalidArgument("alphabet must be nonempty");
  Alphabet a = A;
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  if (a.front() == 0) throw InvalidArgument("alphabet digits must be positive");
  return a;
}

struct DepthValues {
  std::vector<SigmaValue> at0, at1, atinf;
};

DepthValues depth_values(const Alphabet& A, int depth, double s, bool with_sup) {
  DepthValues d;
  double xinf = with_sup ? alphabet_infimum(A) : 0.0;
  for (int n = 1; n <= depth; ++n) {
    d.at0.push_back(continuant_sigma(A, n, s, 0.0));
    d.at1.push_back(continuant_sigma(A, n, s, 1.0));
    if (with_sup) d.atinf.push_back(continuant_sigma(A, n, s, xinf));
  }
  return d;
}

Enclosure bracket_from(const DepthValues& d, const Enclosure& c) {
  double lo = -INFINITY, hi = INFINITY;
  for (std::size_t i = 0; i < d.at0.size(); ++i) {
    Enclosure nn = Enclosure::point(static_cast<double>(i + 1));
    lo = std::max(lo, (log(d.at1[i].bound) / nn).lo);
    hi = std::min(hi, (log(d.at0[i].bound) / nn).hi);
  }
  return {(Enclosure::point(lo) + Enclosure::point(c.lo)).lo, (Enclosure::point(hi) + Enclosure::point(c.hi)).hi};
}

double extrapolate(const std::vector<SigmaValue>& v, double c) {
  std::size_t N = v.size();
  if (N == 1) return std::log(v[0].estimate) + c;
  return std::log(v[N - 1].estimate / v[N - 2].estimate) + c;
}

}  // namespace

Enclosure PotentialSpec::constant(double sv) const {
  Enclosure S = Enclosure::point(sv);
  Enclosure logB = log(Enclosure::point(B));
  switch (kind) {
    case PotentialKind::kPhi1:
      return -(sqr(S) * logB);
    case PotentialKind::kPhi2:
      return -(S * logB) + (Enclosure::point(1.0) - S) * Enclosure::point(alpha);
    case PotentialKind::kPhi3:
      return -(scale_nonneg(logB, 0.5) * S) - S * Enclosure::point(beta);
    case PotentialKind::kEm: {
      // f_m is a rational function of s; enclose it by interval evaluation.
      Enclosure f = S;
      for (int k = 1; k < m; ++k) f = S * f / (Enclosure::point(1.0) - S + f);
      return -(f * logB);
    }
  }
  return {};
}

std::string PotentialSpec::name() const {
  switch (kind) {
    case PotentialKind::kPhi1:
      return "PHI1";
    case PotentialKind::kPhi2:
      return "PHI2";
    case PotentialKind::kPhi3:
      return "PHI3";
    case PotentialKind::kEm:
      return "EM" + std::to_string(m);
  }
  return "?";
}

std::vector<std::string> check_potential_range(const PotentialSpec& phi, const Enclosure& sstar) {
  std::vector<std::string> w;
  double logB = std::log(phi.B);
  if (phi.kind == PotentialKind::kPhi2) {
    if (phi.alpha < 0.5 * sstar.lo * logB || phi.alpha > sstar.hi * logB)
      w.push_back("alpha outside [(s* log B)/2, s* log B] for the declared s* bracket");
  }
  if (phi.kind == PotentialKind::kPhi3 && phi.beta > 0.5 * logB) w.push_back("beta exceeds (log B)/2");
  return w;
}

double alphabet_infimum(const Alphabet& A) {
  Alphabet a = normalized(A);
  double big = static_cast<double>(a.back()), small = static_cast<double>(a.front());
  // Fixed point of x = 1/(big + 1/(small + x)).
  double x = 0.0;
  for (int i = 0; i < 200; ++i) x = 1.0 / (big + 1.0 / (small + x));
  return x;
}

SigmaValue continuant_sigma(const Alphabet& Ain, int n, double s, double x) {
  if (n < 1) throw InvalidArgument("depth must be >= 1");
  Alphabet A = normalized(Ain);
  const double e = -2.0 * s;
  const bool exact = integral_x(x);
  SigmaValue out;
  double total = std::pow(static_cast<double>(A.size()), n);
  if (total <= kDirectWordLimit) {
    auto t = word_table(A, n);
    Enclosure acc{0.0, 0.0};
    double est = 0.0;
    for (const Row& r : *t) {
      if (exact) {
        double base = static_cast<double>(r.full + (x == 1.0 ? r.head : 0));
        acc += pow_exact_base(base, e);
      } else {
        est += std::pow(static_cast<double>(r.full) + x * static_cast<double>(r.head), e);
      }
    }
    if (exact) {
      out.bound = acc;
      out.estimate = acc.mid();
    } else {
      out.bound = {0.0, INFINITY};
      out.estimate = est;
    }
    return out;
  }
  int h = n / 2, m = n - h;
  auto U = word_table(A, h);
  auto V = word_table(A, m);
  std::vector<Enclosure> ub(kBins + 1, Enclosure{0.0, 0.0}), vb(kBins + 1, Enclosure{0.0, 0.0});
  for (const Row& r : *U) {
    // rho = q_{h-1}/q_h
    std::uint64_t i = (kBins * r.head) / r.full;
    ub[i] += pow_exact_base(static_cast<double>(r.full), e);
  }
  for (const Row& r : *V) {
    std::uint64_t j;
    Enclosure w;
    if (exact) {
      std::uint64_t alpha = r.full + (x == 1.0 ? r.head : 0);
      std::uint64_t beta = r.tail + (x == 1.0 ? r.inner : 0);
      j = (kBins * beta) / alpha;
      w = pow_exact_base(static_cast<double>(alpha), e);
    } else {
      double alpha = static_cast<double>(r.full) + x * static_cast<double>(r.head);
      double beta = static_cast<double>(r.tail) + x * static_cast<double>(r.inner);
      j = std::min<std::uint64_t>(kBins, static_cast<std::uint64_t>(std::floor(kBins * beta / alpha)));
      double p = std::pow(alpha, e);
      w = {p, p};
    }
    vb[j] += w;
  }
  const Factors& f = factors_for(s);
  double lo = 0.0, hi = 0.0, est = 0.0;
  Enclosure acc{0.0, 0.0};
  for (std::size_t i = 0; i <= kBins; ++i) {
    if (ub[i].hi == 0.0) continue;
    Enclosure row{0.0, 0.0};
    double row_est = 0.0;
    for (std::size_t j = 0; j <= kBins; ++j) {
      if (vb[j].hi == 0.0) continue;
      std::size_t k = i * kGrid + j;
      row += mul_nonneg(vb[j], Enclosure{f.down[k], f.up[k]});
      row_est += vb[j].mid() * f.mid[k];
    }
    acc += mul_nonneg(ub[i], row);
    est += ub[i].mid() * row_est;
  }
  lo = acc.lo;
  hi = acc.hi;
  out.bound = exact ? Enclosure{lo, hi} : Enclosure{0.0, INFINITY};
  out.estimate = est;
  return out;
}

PressureEstimate pressure_estimate(const PotentialSpec& phi, const Alphabet& Ain, int depth) {
  if (depth < 1) throw InvalidArgument("depth must be >= 1");
  Alphabet A = normalized(Ain);
  PressureEstimate p;
  p.alphabet = A;
  p.depth = depth;
  Enclosure c = phi.constant(phi.s);
  DepthValues d = depth_values(A, depth, phi.s, true);
  for (int n = 1; n <= depth; ++n) {
    p.per_depth.push_back(std::log(d.at0[static_cast<std::size_t>(n - 1)].estimate) / n + c.mid());
    p.per_depth_sup.push_back(std::log(d.atinf[static_cast<std::size_t>(n - 1)].estimate) / n + c.mid());
  }
  p.extrapolated = extrapolate(d.at0, c.mid());
  p.extrapolated_sup = extrapolate(d.atinf, c.mid());
  p.bracket = bracket_from(d, c);
  return p;
}

PressureRoot pressure_root(const PotentialSpec& phi, const Alphabet& Ain, int depth, double tol) {
  if (!(tol > 0)) throw InvalidArgument("tol must be positive");
  Alphabet A = normalized(Ain);
  struct Point {
    double estimate;
    Enclosure bracket;
  };
  std::map<double, Point> memo;
  auto at = [&](double s) -> const Point& {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    Enclosure c = phi.constant(s);
    DepthValues d = depth_values(A, depth, s, false);
    return memo.emplace(s, Point{extrapolate(d.at0, c.mid()), bracket_from(d, c)}).first->second;
  };
  // Smallest s in [0, 1] where pred holds (pred is monotone in s); 1 if none.
  auto first_true = [&](auto pred) {
    if (!pred(at(1.0))) return Enclosure{1.0, 1.0};
    if (pred(at(0.0))) return Enclosure{0.0, 0.0};
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
      double mid = 0.5 * (lo + hi);
      (pred(at(mid)) ? hi : lo) = mid;
    }
    return Enclosure{lo, hi};
  };
  PressureRoot out;
  out.estimate = first_true([](const Point& p) { return p.estimate <= 0; });
  // Root <= s wherever the upper bracket end is <= 0, root > s wherever the
  // lower end is > 0.
  Enclosure up = first_true([](const Point& p) { return p.bracket.hi <= 0; });
  Enclosure down = first_true([](const Point& p) { return !(p.bracket.lo > 0); });
  out.certified = {down.lo, up.hi};
  return out;
}

double variation_check(const PotentialSpec& phi, int n, const Alphabet& Ain) {
  if (n < 1) throw InvalidArgument("level must be >= 1");
  Alphabet A = normalized(Ain);
  if (std::pow(static_cast<double>(A.size()), n) > kHalfWordLimit)
    throw DepthTooLarge("variation enumeration exceeds budget");
  auto t = word_table(A, n);
  // phi(x) = 2 s log x + const; on the cylinder with endpoints p/q and
  // (p + p')/(q + q') the variation is 2 s |log of their ratio|.
  Rational worst(1);
  std::size_t count = t->size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  Word w(static_cast<std::size_t>(n), A.front());
  for (std::size_t k = 0; k < count; ++k) {
    Continuants c(w);
    Rational e1(c.p(n), c.q(n));
    Rational e2(c.p(n) + c.p(n - 1), c.q(n) + c.q(n - 1));
    e1.canonicalize();
    e2.canonicalize();
    Rational ratio = e1 > e2 ? Rational(e1 / e2) : Rational(e2 / e1);
    if (ratio > worst) worst = ratio;
    int j = n - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] + 1 == A.size()) {
      idx[static_cast<std::size_t>(j)] = 0;
      w[static_cast<std::size_t>(j)] = A.front();
      --j;
    }
    if (j < 0) break;
    ++idx[static_cast<std::size_t>(j)];
    w[static_cast<std::size_t>(j)] = A[idx[static_cast<std::size_t>(j)]];
  }
  Enclosure v = scale_nonneg(log(to_enclosure(worst)), 2.0 * std::fabs(phi.s));
  return v.hi;
}

}  // namespace shrinkdim
