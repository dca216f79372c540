// Certified enclosures of continuant power sums over N^n, zeta values, and
// the sum over b != a of a^t / (b^t |a - b|^t).
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "shrinkdim/cf_core.hpp"
#include "shrinkdim/enclosure.hpp"

namespace shrinkdim {

enum class WeightKind { kUnit, kPre1, kPre2, kPre3 };

// Digit-independent weight multiplying every term q_n^{-2s}.
//   kPre1: B^{-n s^2}   kPre2: a1z^{1-s} B^{-n s}   kPre3: a1z^{-s} B^{-n s/2}
// a1z = nullopt stands for +infinity and is rejected for kPre2/kPre3.
struct WeightSpec {
  WeightKind kind = WeightKind::kUnit;
  double B = 1.0;
  int n = 1;
  std::optional<Digit> a1z;

  Enclosure factor(double s) const;
};

struct SumOptions {
  double margin = 0.01;              // require s > 1/2 + margin
  double max_relative_width = 1.0;   // CutoffTooSmall above this width/lo
  bool head_only = false;            // finite alphabet {1..M}^n only
};

// Sum over N^n (or {1..M}^n when head_only) of weight * q_n(a)^{-2s}.
Enclosure continuant_sum_enclosure(int n, double s, const WeightSpec& w, int M, const SumOptions& opt = {});

// The weight-free sum of q_n^{-2s}: head over {1..M}^n plus the tail bracket.
Enclosure continuant_power_sum(int n, double s, int M, const SumOptions& opt = {});
Enclosure head_power_sum(int n, double s, int M);

// zeta(2s) with head length K.
Enclosure zeta_enclosure(double s, std::uint64_t K);
// Sum over a > from of a^{-2s}.
Enclosure zeta_tail(double s, std::uint64_t from);

// a^t * sum over b >= 1, b != a, of (b |a - b|)^{-t}; exact head up to cutoff.
Enclosure lemma_sum(Digit a, double t, std::uint64_t cutoff);

// Histogram of q_n over {1..M}^n. Values below 2^17 are kept exactly; larger
// values fall in bins [lo, hi] of relative width at most 2^-16.
class ContinuantHistogram {
 public:
  struct Bin {
    std::uint64_t lo, hi, count;
  };
  static std::shared_ptr<const ContinuantHistogram> get(int n, int M);
  ContinuantHistogram(int n, int M);

  int n() const { return n_; }
  int M() const { return M_; }
  const std::vector<Bin>& bins() const { return bins_; }
  std::uint64_t words() const { return words_; }
  Enclosure power_sum(double s) const;

  static std::uint64_t bin_index(std::uint64_t q);
  static std::pair<std::uint64_t, std::uint64_t> bin_range(std::uint64_t idx);

 private:
  int n_, M_;
  std::uint64_t words_ = 0;
  std::vector<Bin> bins_;
};

// Upper limit on |{1..M}^n| for exhaustive histograms.
constexpr std::uint64_t kWordBudget = 200000000ULL;

}  // namespace shrinkdim
