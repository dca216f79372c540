// Desk-scale lower-bound witnesses: fundamental intervals inside F_n, the
// block-product measures on them, and exact checks of their gap, measure and
// Hoelder bounds.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shrinkdim/cf_core.hpp"
#include "shrinkdim/enclosure.hpp"
#include "shrinkdim/targets.hpp"

namespace shrinkdim {

// Which of s_{n,1}, s_{n,2}, s_{n,3} the witness is built for.
enum class WitnessCase { kI, kII, kIII };
std::string witness_case_name(WitnessCase c);
WitnessCase parse_witness_case(const std::string& text);

struct WitnessParams {
  WitnessCase wcase = WitnessCase::kI;
  Word u{1};            // root cylinder word, k = |u|
  int ell = 2;          // block length
  int M = 3;            // block alphabet {1..M}
  int n = 5;            // level; n - k = m ell + ell0
  double B = 4.0;
  TargetSpec spec = TargetSpec::zero();
  double t = 0.01;      // content exponent
  double eps = 0.51;    // margin
  double rate = 0.0;    // alpha (Case II) or beta (Case III); unused in Case I
  bool override_asymptotic = false;  // build even when a parameter check fails
  bool exact_solving = true;         // false: use the guaranteed core only

  int k() const { return static_cast<int>(u.size()); }
  int m() const;
  int ell0() const;
  Word u_tilde() const;  // (u, 1^{ell0})
};

// Root of the finite-alphabet equation over {1..M}^ell:
//   Case I:   sum q^{-2s} B^{-ell s^2} = 1
//   Case II:  sum e^{rate ell (1-s)} q^{-2s} B^{-ell s} = 1
//   Case III: sum q^{-2s} e^{-rate ell s} B^{-ell s/2} = 1
// Throws NoRoot when the sum does not cross 1 on (0, 1].
Enclosure solve_finite_s(WitnessCase c, int ell, int M, double B, double rate, double tol = 1e-12);

// The block weight of a single word with continuant q, at exponent s.
double block_weight(WitnessCase c, const BigInt& q, int ell, double s, double B, double rate);

struct ParamCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};
std::vector<ParamCheck> check_params(const WitnessParams& p, const Enclosure& s);

struct FundamentalInterval {
  Word blocks;  // a_1 ... a_m concatenated
  Digit last = 0;
  Rational left, right;       // closed, contained in F_n
  Rational cylinder_length;   // |I_{n+1}(u~, blocks, last)|
  BigInt qn;                  // q_n(u~, blocks)
  bool exact = true;          // endpoints from exact solving (else core)
  Rational length() const { return right - left; }
};

// Last entries of the (n+1)-th digit and the weight the construction assigns
// to each before normalization.
struct LastEntries {
  std::vector<Digit> digits;
  double nominal_weight = 1.0;  // 2/B^{nt}, 2/e^{n(alpha+eps)}, or 1
};
LastEntries last_entries(const WitnessParams& p);

std::vector<FundamentalInterval> enumerate_fundamental(const WitnessParams& p, std::uint64_t budget = 200000);

struct Witness {
  WitnessParams params;
  Enclosure s;                        // s(ell, M)
  double s_value = 0.0;               // point used for the weights
  Enclosure block_sum;                // sum of block weights over the s enclosure
  LastEntries last;
  double last_weight = 1.0;           // 1 / #last entries
  double nominal_last_total = 1.0;    // #last * nominal weight
  std::vector<FundamentalInterval> intervals;  // sorted by left endpoint
  std::vector<double> mass;           // mu of each fundamental interval
  Rational root_length;               // |I_{k+ell0}(u~)|
  std::vector<ParamCheck> checks;

  double total_mass() const;
};

// Throws ParameterViolation when a check fails without the override flag.
Witness build_witness(const WitnessParams& p, std::uint64_t budget = 200000);

// mu of the block cylinder I(u~, a_1 .. a_p), p = blocks.size() / ell.
double measure_of(const Witness& w, const Word& blocks);
// mu of the closed ball [x - r, x + r]; geometry exact, weights binary64.
double measure_of_ball(const Witness& w, const Rational& x, const Rational& r);

struct MembershipReport {
  std::size_t intervals = 0;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::size_t inconclusive = 0;
};
MembershipReport membership_samples(const Witness& w, int per_interval = 10);

struct GapReport {
  std::size_t pairs = 0;
  std::size_t block_pairs = 0;
  std::size_t last_pairs = 0;
  std::size_t violations = 0;
  double worst_block_ratio = INFINITY;  // min over pairs of distance / required
  double worst_last_ratio = INFINITY;
  bool pass() const { return violations == 0; }
};
GapReport gap_check(const Witness& w);

struct MeasureBoundReport {
  std::size_t cylinder_checks = 0;
  std::size_t cylinder_violations = 0;
  std::size_t interval_checks = 0;
  std::size_t interval_violations = 0;   // against 64 in Case I
  std::size_t length_violations = 0;     // length lower bound per case
  double interval_constant = 0.0;        // max mu(I) |I_root|^t / |I|^t
  double cylinder_constant = 0.0;        // max mu(C) |I_root|^t q^{2t}
  bool pass() const { return cylinder_violations == 0 && interval_violations == 0 && length_violations == 0; }
};
MeasureBoundReport measure_bounds(const Witness& w);

struct HolderSample {
  Rational x, r;
};
// Stratified log-uniform radii from below the smallest fundamental interval
// to above |I_{k+ell0}(u~)|, centres in the support or the root cylinder.
std::vector<HolderSample> holder_samples(const Witness& w, std::size_t count, std::uint64_t seed);

struct HolderReport {
  std::size_t samples = 0;
  double max_ratio = 0.0;              // mu(B) |I_root|^t / r^t
  double lemma_constant = 0.0;         // 16 (M+2)^4 (M+1)^{2 ell}
  double refined_constant = 128.0;
  std::vector<double> max_ratio_by_regime;  // large, single interval, level n, block levels
  std::vector<std::size_t> count_by_regime;
  bool pass() const { return max_ratio <= lemma_constant; }
};
HolderReport holder_check(const Witness& w, const std::vector<HolderSample>& samples);

struct ContentBound {
  double bound = 0.0;       // |I_root|^t mu(total) / lemma constant
  double empirical = 0.0;   // same with the sampled maximum ratio
  double explicit_form = 0.0;  // |I_k(u)| / (2^{ell+8} (M+2)^4 (M+1)^{2 ell})
};
ContentBound content_lower_bound(const Witness& w, const HolderReport& h);

}  // namespace shrinkdim
