#include "shrinkdim/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace shrinkdim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rounding of a nearest-rounded result whose exact error sign is known.
struct Rounded {
  double lo, hi;
};

Rounded from_error(double r, double err) {
  if (!std::isfinite(r)) return {r == kInf ? std::numeric_limits<double>::max() : -kInf,
                                 r == -kInf ? -std::numeric_limits<double>::max() : kInf};
  if (err > 0) return {r, std::nextafter(r, kInf)};
  if (err < 0) return {std::nextafter(r, -kInf), r};
  return {r, r};
}

Rounded add_rounded(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return from_error(s, 0);
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return from_error(s, err);
}

Rounded mul_rounded(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return from_error(p, 0);
  double err = std::fma(a, b, -p);
  if (err == 0 && p == 0 && a != 0 && b != 0) {
    // Underflow to zero: the exact product is tiny with the sign of a*b.
    return (std::signbit(a) == std::signbit(b)) ? Rounded{0.0, std::numeric_limits<double>::denorm_min()}
                                                 : Rounded{-std::numeric_limits<double>::denorm_min(), 0.0};
  }
  return from_error(p, err);
}

Rounded div_rounded(double a, double b) {
  double q = a / b;
  if (!std::isfinite(q) || b == 0) return from_error(q, 0);
  double r = -std::fma(q, b, -a);  // a - q*b exactly when representable
  double err = (b > 0) ? r : -r;
  if (q == 0 && a != 0) {
    return (std::signbit(a) == std::signbit(b)) ? Rounded{0.0, std::numeric_limits<double>::denorm_min()}
                                                 : Rounded{-std::numeric_limits<double>::denorm_min(), 0.0};
  }
  return from_error(q, err);
}

}  // namespace

double round_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -kInf);
  return x;
}

double round_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, kInf);
  return x;
}

Enclosure Enclosure::hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

std::string Enclosure::str() const {
  std::ostringstream os;
  os.precision(17);
  os << "[" << lo << ", " << hi << "]";
  return os.str();
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return {add_rounded(a.lo, b.lo).lo, add_rounded(a.hi, b.hi).hi};
}

Enclosure operator-(const Enclosure& a) { return {-a.hi, -a.lo}; }

Enclosure operator-(const Enclosure& a, const Enclosure& b) { return a + (-b); }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rounded c[4] = {mul_rounded(a.lo, b.lo), mul_rounded(a.lo, b.hi), mul_rounded(a.hi, b.lo),
                  mul_rounded(a.hi, b.hi)};
  Enclosure r{c[0].lo, c[0].hi};
  for (int i = 1; i < 4; ++i) {
    r.lo = std::min(r.lo, c[i].lo);
    r.hi = std::max(r.hi, c[i].hi);
  }
  return r;
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (b.lo <= 0 && b.hi >= 0) return {-kInf, kInf};
  Rounded c[4] = {div_rounded(a.lo, b.lo), div_rounded(a.lo, b.hi), div_rounded(a.hi, b.lo),
                  div_rounded(a.hi, b.hi)};
  Enclosure r{c[0].lo, c[0].hi};
  for (int i = 1; i < 4; ++i) {
    r.lo = std::min(r.lo, c[i].lo);
    r.hi = std::max(r.hi, c[i].hi);
  }
  return r;
}

Enclosure& operator+=(Enclosure& a, const Enclosure& b) {
  a = a + b;
  return a;
}

Enclosure& operator*=(Enclosure& a, const Enclosure& b) {
  a = a * b;
  return a;
}

Enclosure exp(const Enclosure& x) {
  double lo = std::exp(x.lo);
  double hi = std::exp(x.hi);
  return {std::max(0.0, round_down(lo, 2)), round_up(hi, 2)};
}

Enclosure log(const Enclosure& x) {
  double lo = x.lo <= 0 ? -kInf : round_down(std::log(x.lo), 2);
  double hi = x.hi <= 0 ? -kInf : round_up(std::log(x.hi), 2);
  if (x.lo == 1.0) lo = 0.0;
  if (x.hi == 1.0) hi = 0.0;
  return {lo, hi};
}

Enclosure pow_exact_base(double base, double exponent) {
  if (exponent == 0.0 || base == 1.0) return {1.0, 1.0};
  double r = std::pow(base, exponent);
  return {std::max(0.0, round_down(r, 2)), round_up(r, 2)};
}

Enclosure pow(const Enclosure& x, const Enclosure& y) {
  if (x.is_point() && y.is_point()) return pow_exact_base(x.lo, y.lo);
  return exp(y * log(x));
}

Enclosure sqr(const Enclosure& x) {
  if (x.lo >= 0) return {mul_rounded(x.lo, x.lo).lo, mul_rounded(x.hi, x.hi).hi};
  if (x.hi <= 0) return {mul_rounded(x.hi, x.hi).lo, mul_rounded(x.lo, x.lo).hi};
  double m = std::max(-x.lo, x.hi);
  return {0.0, mul_rounded(m, m).hi};
}

Enclosure sqrt(const Enclosure& x) {
  double lo = x.lo <= 0 ? 0.0 : round_down(std::sqrt(x.lo));
  double hi = x.hi <= 0 ? 0.0 : round_up(std::sqrt(x.hi));
  return {lo, hi};
}

Enclosure max(const Enclosure& a, const Enclosure& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Enclosure min(const Enclosure& a, const Enclosure& b) {
  return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Enclosure intersect(const Enclosure& a, const Enclosure& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Enclosure scale_nonneg(const Enclosure& a, double c) {
  return {mul_rounded(a.lo, c).lo, mul_rounded(a.hi, c).hi};
}

Enclosure mul_nonneg(const Enclosure& a, const Enclosure& b) {
  return {mul_rounded(a.lo, b.lo).lo, mul_rounded(a.hi, b.hi).hi};
}

Enclosure to_enclosure(const mpq_class& q) {
  double d = q.get_d();
  int c = cmp(mpq_class(d), q);
  if (c == 0) return {d, d};
  if (c < 0) return {d, std::nextafter(d, kInf)};
  return {std::nextafter(d, -kInf), d};
}

Enclosure to_enclosure(const mpz_class& z) { return to_enclosure(mpq_class(z)); }

}  // namespace shrinkdim
