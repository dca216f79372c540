// Pre-dimensional numbers: certified roots s_{n,1}, s_{n,2}, s_{n,3}, branch
// selection, the first-digit threshold implications, finite-window
// trajectories and the f_m iteration.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "shrinkdim/enclosure.hpp"
#include "shrinkdim/sums.hpp"
#include "shrinkdim/targets.hpp"

namespace shrinkdim {

struct PredimRoot {
  Enclosure s;
  int M = 0;
  int evaluations = 0;
  bool conventional = false;         // a1z = infinity: fixed by definition
  bool no_root_in_unit = false;      // sum still exceeds 1 at s = 1; value is 1
  bool lower_at_half = false;   // lower end 1/2 taken from the s > 1/2 bound
};

// kind in {1, 2, 3}; a1z = nullopt means +infinity.
PredimRoot solve_predim(int n, double B, int kind, std::optional<Digit> a1z, int M, double tol,
                        const SumOptions& opt = {});

enum class Branch { kCaseS1, kCaseMaxS2S3 };
std::string branch_name(Branch b);

struct Selection {
  Enclosure sn;
  Branch branch;
};
// Throws AmbiguousBranch when s1 and s2 overlap.
Selection select_sn(const Enclosure& s1, const Enclosure& s2, const Enclosure& s3);

enum class Verdict { kPass, kFail, kInconclusive };
std::string verdict_name(Verdict v);

struct PredimOptions {
  int M = 0;              // 0 selects default_cutoff(n)
  double tol = 1e-4;      // target enclosure width
  int max_refinements = 3;
  SumOptions sum;
};

// 20 up to n = 6, then shrinking so that M^n stays near 10^7.
int default_cutoff(int n);

struct PredimResult {
  int n = 0;
  double B = 0.0;
  std::optional<Digit> a1z;
  PredimRoot s1, s2, s3;
  Enclosure sn;
  Branch branch = Branch::kCaseS1;
  bool branch_by_threshold = false;  // overlap resolved through a1z vs B^{n s1}
  std::array<Verdict, 4> thresholds{};
};

PredimResult compute_predim(int n, double B, std::optional<Digit> a1z, const PredimOptions& opt = {});

// Items (1)-(4): s1<=s2 => a1z >= B^{n s1};  s1>s2 => a1z < B^{n s2};
// s2<s3 => a1z < B^{n s3/2};  s2>=s3 => a1z >= B^{n s2/2}.
std::array<Verdict, 4> threshold_check(const PredimResult& r);

struct SstarEstimate {
  int n_min = 0, n_max = 0;
  std::vector<std::optional<PredimResult>> per_n;  // nullopt: skipped
  std::vector<std::string> skipped_reason;
  std::vector<double> running_max_lo, running_max_hi;
};

SstarEstimate sstar_estimate(const TargetSpec& target, double B, int n_min, int n_max,
                             const PredimOptions& opt = {});

// f_1(s) = s, f_{k+1}(s) = s f_k(s) / (1 - s + f_k(s)).
double f_m_iterate(int m, double s);

// Root of the finite-alphabet pressure with potential -s log|T'| - f_m(s) log B.
Enclosure em_dimension(int m, double B, int M, int depth, double tol);

}  // namespace shrinkdim
