// Finite-alphabet pressure P_A(T, phi) for potentials of the form
// phi(x) = -s log|T'(x)| + c(s), and root solving in s.
#pragma once

#include <string>
#include <vector>

#include "shrinkdim/cf_core.hpp"
#include "shrinkdim/enclosure.hpp"

namespace shrinkdim {

using Alphabet = std::vector<Digit>;

// c(s) per kind:
//   kPhi1: -s^2 log B
//   kPhi2: -s log B + (1 - s) alpha
//   kPhi3: -(s/2) log B - s beta
//   kEm:   -f_m(s) log B
enum class PotentialKind { kPhi1, kPhi2, kPhi3, kEm };

struct PotentialSpec {
  PotentialKind kind = PotentialKind::kPhi1;
  double s = 1.0;
  double B = 2.0;
  double alpha = 0.0;
  double beta = 0.0;
  int m = 2;

  Enclosure constant(double s_value) const;
  std::string name() const;
};

// Warnings (never errors) when alpha or beta fall outside the ranges in which
// the potentials are used, given a caller-declared bracket for s*.
std::vector<std::string> check_potential_range(const PotentialSpec& phi, const Enclosure& sstar);

struct PressureEstimate {
  Alphabet alphabet;
  int depth = 0;
  std::vector<double> per_depth;      // (1/n) log Sigma_n at x = 0, plus c
  std::vector<double> per_depth_sup;  // same at x = inf X_A
  double extrapolated = 0.0;          // log(Sigma_N / Sigma_{N-1}) + c, x = 0
  double extrapolated_sup = 0.0;
  // max_n (1/n) log Sigma_n(x=1) + c <= P <= min_n (1/n) log Sigma_n(x=0) + c
  Enclosure bracket;
  bool certified = false;  // the extrapolated value is heuristic
};

PressureEstimate pressure_estimate(const PotentialSpec& phi, const Alphabet& A, int depth);

struct PressureRoot {
  Enclosure estimate;   // bisection on the extrapolated pressure (heuristic)
  Enclosure certified;  // from the depth-wise bracket
  bool estimate_certified = false;
};

// The s field of phi is ignored; the root in s of P_A(T, phi_s) = 0 on [0, 1].
PressureRoot pressure_root(const PotentialSpec& phi, const Alphabet& A, int depth, double tol);

// Upper bound on sup |phi(x) - phi(y)| over level-n cylinders with digits in A.
double variation_check(const PotentialSpec& phi, int n, const Alphabet& A);

// Sigma_n(x) = sum over A^n of (q_n + x q_{n-1})^{-2s}, without c. For
// x in {0, 1} the enclosure is certified.
struct SigmaValue {
  Enclosure bound;
  double estimate = 0.0;
};
SigmaValue continuant_sigma(const Alphabet& A, int n, double s, double x);

// inf X_A = [max A, min A, max A, min A, ...].
double alphabet_infimum(const Alphabet& A);

constexpr double kDirectWordLimit = 2e5;
constexpr double kHalfWordLimit = 5e6;

}  // namespace shrinkdim
