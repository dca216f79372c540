// Interval enclosures over binary64 with outward rounding.
//
// Every arithmetic result is computed in round-to-nearest and then pushed one
// ulp outward (two for transcendental functions), so the exact real result of
// the operation applied to any points of the operands lies in [lo, hi].
#pragma once

#include <gmpxx.h>

#include <string>

namespace shrinkdim {

struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;

  static Enclosure point(double x) { return {x, x}; }
  static Enclosure hull(double a, double b);

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Enclosure& e) const { return lo <= e.lo && e.hi <= hi; }
  bool is_point() const { return lo == hi; }
  std::string str() const;
};

double round_down(double x, int ulps = 1);
double round_up(double x, int ulps = 1);

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator/(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a);
Enclosure& operator+=(Enclosure& a, const Enclosure& b);
Enclosure& operator*=(Enclosure& a, const Enclosure& b);

Enclosure exp(const Enclosure& x);
Enclosure log(const Enclosure& x);
// x^y for x > 0.
Enclosure pow(const Enclosure& x, const Enclosure& y);
// Positive base given exactly as a double, e.g. an integer continuant.
Enclosure pow_exact_base(double base, double exponent);
Enclosure sqr(const Enclosure& x);
Enclosure sqrt(const Enclosure& x);
Enclosure max(const Enclosure& a, const Enclosure& b);
Enclosure min(const Enclosure& a, const Enclosure& b);
Enclosure intersect(const Enclosure& a, const Enclosure& b);
// a * c for a >= 0 and a nonnegative exact scalar c.
Enclosure scale_nonneg(const Enclosure& a, double c);
// a * b for a, b >= 0.
Enclosure mul_nonneg(const Enclosure& a, const Enclosure& b);

// Outward conversion of an exact rational.
Enclosure to_enclosure(const mpq_class& q);
Enclosure to_enclosure(const mpz_class& z);

// Certified comparisons: true only when the relation holds for every point.
inline bool certainly_le(const Enclosure& a, const Enclosure& b) { return a.hi <= b.lo; }
inline bool certainly_lt(const Enclosure& a, const Enclosure& b) { return a.hi < b.lo; }

}  // namespace shrinkdim
