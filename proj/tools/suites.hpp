// Property suites shared by the `lemmas` subcommand and the acceptance run.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shrinkdim/cf_core.hpp"
#include "shrinkdim/enclosure.hpp"
#include "shrinkdim/massdist.hpp"
#include "shrinkdim/predim.hpp"
#include "shrinkdim/targets.hpp"

namespace shrinkdim::cli {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string detail;
  bool pass() const { return failures == 0 && checks > 0; }
};

// Continuant bounds, split and deletion ratios, cylinder endpoints and
// lengths, and the determinant identity on random words.
SuiteResult cf_invariant_suite(std::size_t words, int max_len, int max_digit, std::uint64_t seed);

struct RatioRange {
  double t = 0.0;
  double c1 = INFINITY, c2 = -INFINITY;  // bounds on lemma_sum(a, t) / a^{1-t}
  Digit argmin = 0, argmax = 0;
};
// lemma_sum(a, t) / a^{1-t} over a = 1..a_max; fails on non-finite or
// non-positive ranges.
SuiteResult lemma_sum_suite(Digit a_max, const std::vector<double>& ts, std::vector<RatioRange>* ranges);

// Exact identity |T^n x - z| = |a1(z) - a_{n+1} + Tz - T^{n+1}x| / ((a_{n+1} + T^{n+1}x)(a1(z) + Tz)).
SuiteResult identity_suite(std::size_t samples, std::uint64_t seed);

// Exact J sets against the far-case length bounds, on random prefixes with
// 8 a1(z) b / (|a1(z) - b| B^n) <= 1.
SuiteResult sandwich_suite(std::size_t samples, double B, std::uint64_t seed);

struct GridCase {
  double B;
  std::string target;
  int n;
};
struct GridOutcome {
  GridCase where;
  PredimResult result;
  std::string error;
};
std::vector<GridOutcome> predim_grid(const std::vector<double>& Bs, const std::vector<std::string>& targets,
                                     int n_min, int n_max, const PredimOptions& opt);
// No FAIL verdict in any threshold check of the grid.
SuiteResult threshold_suite(const std::vector<GridOutcome>& grid);

struct WitnessSuiteReport {
  SuiteResult membership, gaps, measure, holder, content;
  double total_mass = 0.0;
  double holder_max = 0.0;
  double content_bound = 0.0, content_explicit = 0.0;
};
WitnessSuiteReport witness_suite(const WitnessParams& p, std::size_t samples, std::uint64_t seed);

}  // namespace shrinkdim::cli
