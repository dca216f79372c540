// Exact continued-fraction arithmetic: Gauss map, digit expansion, continuant
// ladders and cylinder intervals. No floating point is used here.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace shrinkdim {

using BigInt = mpz_class;
using Rational = mpq_class;
using Digit = std::uint64_t;
using Word = std::vector<Digit>;

BigInt to_bigint(Digit d);
Rational make_rational(long num, long den);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string word_to_string(const Word& w);
Word concat(const Word& a, const Word& b);

// Ladder (p_k, q_k) for k = -1 .. n, seeded p_{-1}=1, q_{-1}=0, p_0=0, q_0=1.
class Continuants {
 public:
  explicit Continuants(const Word& w);
  int n() const { return static_cast<int>(p_.size()) - 2; }
  const BigInt& p(int k) const { return p_.at(static_cast<std::size_t>(k + 1)); }
  const BigInt& q(int k) const { return q_.at(static_cast<std::size_t>(k + 1)); }

 private:
  std::vector<BigInt> p_, q_;
};

Continuants continuants(const Word& w);
BigInt q_of(const Word& w);

struct CylinderInterval {
  Word word;
  Rational left, right;
  bool left_closed = true;
  bool right_closed = false;

  Rational length() const { return right - left; }
  bool contains(const Rational& x) const;
  // Closure containment, ignoring the half-open convention.
  bool closure_contains(const Rational& x) const { return left <= x && x <= right; }
};

Rational gauss_step(const Rational& x);
Rational gauss_iterate(const Rational& x, int times);
Word expand(const Rational& x, std::size_t max_digits);
CylinderInterval cylinder(const Word& w);
Rational eval_word(const Word& w, const Rational& tail);

enum class Side { kLeft, kRight };
// Position of I(w·a) relative to I(w·b); requires a != b.
Side compare_cylinders(const Word& w, Digit a, Digit b);

// Exact point of the cylinder I(w) reached by tail y: [a_1, ..., a_n + y].
// Same as eval_word but tolerates the empty word (returns y).
Rational point_in_cylinder(const Word& w, const Rational& y);

}  // namespace shrinkdim
