// Target sequences {z_n}: digit descriptions, values, first digits, images
// under the Gauss map and the empirical growth rate of the first digit.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shrinkdim/cf_core.hpp"

namespace shrinkdim {

// Closed rational interval; lo == hi for exact values.
struct RationalInterval {
  Rational lo, hi;
  static RationalInterval exact(const Rational& q) { return {q, q}; }
  bool is_exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
};

// Eventually periodic digit description prefix·period·period·...; a finite
// expansion when period is empty. The empty description is the number 0.
struct DigitSeq {
  Word prefix;
  Word period;

  bool terminating() const { return period.empty(); }
  bool is_zero() const { return prefix.empty() && period.empty(); }
  // 1-based digit, nullopt past the end of a finite expansion.
  std::optional<Digit> digit(std::size_t i) const;
  DigitSeq shift(std::size_t k) const;
  Word take(std::size_t count) const;
  // Rewrites a trailing 1 of a finite expansion into the floor-algorithm form.
  DigitSeq canonical() const;
  // Exact for finite expansions, otherwise the closed hull of the depth-level
  // cylinder that contains the value.
  RationalInterval value(std::size_t depth) const;
  std::string str() const;

  static DigitSeq finite(const Word& w) { return DigitSeq{w, {}}.canonical(); }
  static DigitSeq periodic(const Word& prefix, const Word& period) { return DigitSeq{prefix, period}.canonical(); }
  static DigitSeq of_rational(const Rational& x);
};

enum class TargetFamily { kZero, kConstant, kPeriodicInN, kExpFirstDigit };

struct TargetSpec {
  TargetFamily family = TargetFamily::kZero;
  DigitSeq constant;
  std::vector<DigitSeq> cycle;
  double gamma = 0.0;
  Word tail;
  std::size_t depth = 48;  // truncation depth for irrational enclosures

  static TargetSpec zero();
  static TargetSpec constant_digits(const DigitSeq& d);
  static TargetSpec golden();
  static TargetSpec periodic_in_n(const std::vector<DigitSeq>& cycle);
  static TargetSpec exp_first_digit(double gamma, const Word& tail);

  // Canonical digit description of z_n.
  DigitSeq digits_at(std::size_t n) const;
  std::optional<Digit> a1(std::size_t n) const;
  std::string str() const;

  // Grammar: zero | golden | const:P[|R] | periodic:S1/S2/... | exp:G[:T]
  // where P, R, T are comma-separated digits, S are const bodies and G is a
  // number or "halflogB" (requires base).
  static TargetSpec parse(const std::string& text, double base = 0.0);
};

struct TargetValue {
  RationalInterval z;
  std::optional<Digit> a1;  // nullopt means +infinity
  RationalInterval tz;
  DigitSeq digits;
};

TargetValue z_value(const TargetSpec& spec, std::size_t n);

struct GrowthRate {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double spread = 0.0;
  std::vector<double> per_n;
};

GrowthRate alpha_beta(const TargetSpec& spec, std::size_t n_min, std::size_t n_max);

}  // namespace shrinkdim
