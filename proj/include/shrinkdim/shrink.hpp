// The shrinking-target condition |T^n x - z_n| |T^{n+1} x - Tz_n| < B^{-n},
// its exact algebra on (n+1)-level cylinders, and the cover s-volumes.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shrinkdim/cf_core.hpp"
#include "shrinkdim/enclosure.hpp"
#include "shrinkdim/predim.hpp"
#include "shrinkdim/targets.hpp"

namespace shrinkdim {

enum class Tri { kTrue, kFalse, kInconclusive };

// Exact B^{-n} for a binary64 base B.
Rational base_power_inv(double B, int n);

// Verdict of the condition at level n. x is given either exactly or as a
// digit stream; irrational data is refined up to max_depth digits before the
// verdict is declared inconclusive.
Tri membership_verdict(const DigitSeq& x, const TargetSpec& spec, double B, int n, std::size_t max_depth = 768);
Tri membership_verdict(const Rational& x, const TargetSpec& spec, double B, int n, std::size_t max_depth = 768);
// Same, but throws PrecisionExhausted instead of returning kInconclusive.
bool membership(const Rational& x, const TargetSpec& spec, double B, int n);
bool membership(const DigitSeq& x, const TargetSpec& spec, double B, int n);

struct IdentityResult {
  Rational lhs;  // |T^n x - z|
  Rational rhs;  // quotient form through a_1(z), Tz, a_{n+1}(x), T^{n+1}x
  bool equal() const { return lhs == rhs; }
};
IdentityResult identity_check(const Rational& x, const Rational& z, int n);

enum class JCase { kFar, kAdjacent, kEqual };
std::string jcase_name(JCase c);

struct JIntervalBound {
  Word prefix;
  Digit next_digit = 1;
  JCase kind = JCase::kFar;
  Enclosure upper_len;
  Enclosure lower_len;  // 0 when no inner interval is asserted
  int pieces = 1;
  bool full_cylinder = false;  // adjacent case covering the whole cylinder
};

// a1z = nullopt (z_n = 0) throws Inapplicable.
JIntervalBound j_interval_bounds(const Word& prefix, Digit a_next, std::optional<Digit> a1z, double B, int n);
JIntervalBound j_interval_bounds(const Word& prefix, Digit a_next, const TargetSpec& spec, double B, int n);

// x-interval known only through enclosures of its endpoints.
struct FuzzyInterval {
  RationalInterval left, right;
  // Certified bounds on the length.
  Rational min_length() const;
  Rational max_length() const;
};

// Exact description of F_n inside I_{n+1}(prefix, a_next) for a target given
// by its first digit a1z (nullopt for z = 0) and Tz (exact rational).
struct JSolution {
  std::vector<FuzzyInterval> components;  // ordered by x
  // Bounds on the length of the convex hull and of the longest component.
  Rational hull_min, hull_max, longest_min, longest_max;
  bool empty() const { return components.empty(); }
};
JSolution solve_j(const Word& prefix, Digit a_next, std::optional<Digit> a1z, const Rational& tz, double B,
                  int sqrt_bits = 96);

// Cover piece intervals emitted for the cylinder I_{n+1}(prefix, a_next):
// the ball preimages used to bound J (one or two) or the whole cylinder.
std::vector<std::pair<Rational, Rational>> cover_pieces(const Word& prefix, Digit a_next,
                                                        std::optional<Digit> a1z, const Rational& tz,
                                                        double B);

struct CoverTerm {
  std::string name;
  Enclosure value;
};

struct CoverReport {
  int n = 0;
  double B = 0.0;
  double s = 0.0;
  Branch branch = Branch::kCaseS1;
  std::uint64_t cutoff = 0;  // floor(B^{n s1.hi}/2) in the first branch
  Enclosure level_sum;        // sum over N^n of q_n^{-2s}
  Enclosure inner;            // per-prefix factor multiplying level_sum
  Enclosure total;
  std::vector<CoverTerm> terms;
};

CoverReport cover_svolume(int n, double B, const TargetSpec& spec, double s, int M,
                          const PredimOptions& popt = {});
// Same with the pre-dimensional data supplied by the caller.
CoverReport cover_svolume(const PredimResult& pre, const TargetSpec& spec, double s, int M);

struct DecayFit {
  double slope = 0.0;      // d log2(total) / dn
  double intercept = 0.0;
  std::vector<double> residuals;
};
DecayFit fit_decay(const std::vector<int>& n, const std::vector<double>& totals);

struct HitReport {
  std::vector<int> hits;
  std::vector<int> inconclusive;
};
HitReport hit_times(const DigitSeq& x, const TargetSpec& spec, double B, int N);

}  // namespace shrinkdim
