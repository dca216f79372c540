#include "shrinkdim/cf_core.hpp"

#include <sstream>
#include <stdexcept>

#include "shrinkdim/errors.hpp"

namespace shrinkdim {

BigInt to_bigint(Digit d) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(Digit), 0, 0, &d);
  return r;
}

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw InvalidArgument("not a rational number: " + text);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Continuants::Continuants(const Word& w) {
  p_.reserve(w.size() + 2);
  q_.reserve(w.size() + 2);
  p_.emplace_back(1);
  q_.emplace_back(0);
  p_.emplace_back(0);
  q_.emplace_back(1);
  for (Digit a : w) {
    if (a == 0) throw InvalidArgument("digits must be positive");
    BigInt ab = to_bigint(a);
    std::size_t k = p_.size();
    p_.push_back(ab * p_[k - 1] + p_[k - 2]);
    q_.push_back(ab * q_[k - 1] + q_[k - 2]);
  }
}

Continuants continuants(const Word& w) { return Continuants(w); }

BigInt q_of(const Word& w) {
  BigInt q0 = 0, q1 = 1;
  for (Digit a : w) {
    BigInt q2 = to_bigint(a) * q1 + q0;
    q0 = q1;
    q1 = q2;
  }
  return q1;
}

bool CylinderInterval::contains(const Rational& x) const {
  bool above = left_closed ? (x >= left) : (x > left);
  bool below = right_closed ? (x <= right) : (x < right);
  return above && below;
}

Rational gauss_step(const Rational& x) {
  if (x < 0 || x >= 1) throw InvalidArgument("gauss_step expects 0 <= x < 1");
  if (x == 0) return Rational(0);
  Rational inv = 1 / x;
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
  Rational r = inv - Rational(fl);
  r.canonicalize();
  return r;
}

Rational gauss_iterate(const Rational& x, int times) {
  Rational y = x;
  for (int i = 0; i < times && y != 0; ++i) y = gauss_step(y);
  return y;
}

Word expand(const Rational& x, std::size_t max_digits) {
  if (x < 0 || x >= 1) throw InvalidArgument("expand expects 0 <= x < 1");
  Word w;
  Rational y = x;
  while (y != 0 && w.size() < max_digits) {
    Rational inv = 1 / y;
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
    if (!fl.fits_ulong_p()) throw BudgetExceeded("partial quotient exceeds 64 bits");
    w.push_back(fl.get_ui());
    y = inv - Rational(fl);
    y.canonicalize();
  }
  return w;
}

CylinderInterval cylinder(const Word& w) {
  Continuants c(w);
  int n = c.n();
  Rational a(c.p(n), c.q(n));
  Rational b(c.p(n) + c.p(n - 1), c.q(n) + c.q(n - 1));
  a.canonicalize();
  b.canonicalize();
  CylinderInterval cyl;
  cyl.word = w;
  if (n % 2 == 0) {
    cyl.left = a;
    cyl.right = b;
    cyl.left_closed = true;
    cyl.right_closed = false;
  } else {
    cyl.left = b;
    cyl.right = a;
    cyl.left_closed = false;
    cyl.right_closed = true;
  }
  return cyl;
}

Rational eval_word(const Word& w, const Rational& tail) {
  if (w.empty()) throw InvalidArgument("eval_word expects a nonempty word");
  return point_in_cylinder(w, tail);
}

Rational point_in_cylinder(const Word& w, const Rational& y) {
  Continuants c(w);
  int n = c.n();
  Rational num = Rational(c.p(n)) + y * Rational(c.p(n - 1));
  Rational den = Rational(c.q(n)) + y * Rational(c.q(n - 1));
  Rational r = num / den;
  r.canonicalize();
  return r;
}

Side compare_cylinders(const Word& w, Digit a, Digit b) {
  if (a == b) throw InvalidArgument("compare_cylinders expects distinct digits");
  bool odd = (w.size() % 2) == 1;
  bool a_first = odd ? (a < b) : (a > b);
  return a_first ? Side::kLeft : Side::kRight;
}

}  // namespace shrinkdim
