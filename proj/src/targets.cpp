#include "shrinkdim/targets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shrinkdim/errors.hpp"

namespace shrinkdim {

namespace {

Word parse_digits(const std::string& text) {
  Word w;
  if (text.empty()) return w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidArgument("bad digit list: " + text);
    Digit d = std::stoull(item);
    if (d == 0) throw InvalidArgument("digits must be positive: " + text);
    w.push_back(d);
  }
  return w;
}

std::string digits_str(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s;
}

DigitSeq parse_const_body(const std::string& body) {
  auto bar = body.find('|');
  if (bar == std::string::npos) return DigitSeq::finite(parse_digits(body));
  Word period = parse_digits(body.substr(bar + 1));
  if (period.empty()) throw InvalidArgument("empty period in: " + body);
  return DigitSeq::periodic(parse_digits(body.substr(0, bar)), period);
}

}  // namespace

std::optional<Digit> DigitSeq::digit(std::size_t i) const {
  if (i == 0) throw InvalidArgument("digit index is 1-based");
  if (i <= prefix.size()) return prefix[i - 1];
  if (period.empty()) return std::nullopt;
  return period[(i - 1 - prefix.size()) % period.size()];
}

DigitSeq DigitSeq::shift(std::size_t k) const {
  if (k < prefix.size()) return DigitSeq{Word(prefix.begin() + static_cast<long>(k), prefix.end()), period};
  if (period.empty()) return DigitSeq{};
  std::size_t r = (k - prefix.size()) % period.size();
  Word rot(period.begin() + static_cast<long>(r), period.end());
  rot.insert(rot.end(), period.begin(), period.begin() + static_cast<long>(r));
  return DigitSeq{{}, rot};
}

Word DigitSeq::take(std::size_t count) const {
  Word w;
  for (std::size_t i = 1; i <= count; ++i) {
    auto d = digit(i);
    if (!d) break;
    w.push_back(*d);
  }
  return w;
}

DigitSeq DigitSeq::canonical() const {
  DigitSeq r = *this;
  if (r.period.empty() && r.prefix.size() >= 2 && r.prefix.back() == 1) {
    r.prefix.pop_back();
    r.prefix.back() += 1;
  }
  return r;
}

RationalInterval DigitSeq::value(std::size_t depth) const {
  if (is_zero()) return RationalInterval::exact(Rational(0));
  if (terminating()) return RationalInterval::exact(point_in_cylinder(prefix, Rational(0)));
  Word w = take(std::max<std::size_t>(depth, 1));
  Rational a = point_in_cylinder(w, Rational(0));
  Rational b = point_in_cylinder(w, Rational(1));
  if (a > b) std::swap(a, b);
  return {a, b};
}

std::string DigitSeq::str() const {
  if (period.empty()) return digits_str(prefix);
  return digits_str(prefix) + "|" + digits_str(period);
}

DigitSeq DigitSeq::of_rational(const Rational& x) {
  if (x == 1) return DigitSeq{{1}, {}};
  return DigitSeq::finite(expand(x, static_cast<std::size_t>(-1)));
}

TargetSpec TargetSpec::zero() { return TargetSpec{}; }

TargetSpec TargetSpec::constant_digits(const DigitSeq& d) {
  TargetSpec t;
  t.family = d.is_zero() ? TargetFamily::kZero : TargetFamily::kConstant;
  t.constant = d.canonical();
  return t;
}

TargetSpec TargetSpec::golden() { return constant_digits(DigitSeq::periodic({}, {1})); }

TargetSpec TargetSpec::periodic_in_n(const std::vector<DigitSeq>& cycle) {
  if (cycle.empty()) throw InvalidArgument("periodic target needs at least one constant");
  TargetSpec t;
  t.family = TargetFamily::kPeriodicInN;
  for (const auto& d : cycle) t.cycle.push_back(d.canonical());
  return t;
}

TargetSpec TargetSpec::exp_first_digit(double gamma, const Word& tail) {
  if (!(gamma >= 0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be finite and >= 0");
  TargetSpec t;
  t.family = TargetFamily::kExpFirstDigit;
  t.gamma = gamma;
  t.tail = tail;
  return t;
}

DigitSeq TargetSpec::digits_at(std::size_t n) const {
  if (n == 0) throw InvalidArgument("target index starts at 1");
  switch (family) {
    case TargetFamily::kZero:
      return DigitSeq{};
    case TargetFamily::kConstant:
      return constant;
    case TargetFamily::kPeriodicInN:
      return cycle[(n - 1) % cycle.size()];
    case TargetFamily::kExpFirstDigit: {
      double v = std::exp(gamma * static_cast<double>(n));
      if (v > 9.0e18) throw BudgetExceeded("first digit of target exceeds 64 bits");
      Digit a = std::max<Digit>(1, static_cast<Digit>(std::llround(v)));
      Word w{a};
      w.insert(w.end(), tail.begin(), tail.end());
      return DigitSeq::finite(w);
    }
  }
  return DigitSeq{};
}

std::optional<Digit> TargetSpec::a1(std::size_t n) const {
  DigitSeq d = digits_at(n);
  if (d.is_zero()) return std::nullopt;
  return d.digit(1);
}

std::string TargetSpec::str() const {
  switch (family) {
    case TargetFamily::kZero:
      return "zero";
    case TargetFamily::kConstant:
      return "const:" + constant.str();
    case TargetFamily::kPeriodicInN: {
      std::string s = "periodic:";
      for (std::size_t i = 0; i < cycle.size(); ++i) s += (i ? "/" : "") + cycle[i].str();
      return s;
    }
    case TargetFamily::kExpFirstDigit: {
      std::ostringstream os;
      os.precision(17);
      os << "exp:" << gamma;
      if (!tail.empty()) os << ":" << digits_str(tail);
      return os.str();
    }
  }
  return "zero";
}

TargetSpec TargetSpec::parse(const std::string& text, double base) {
  if (text == "zero") return zero();
  if (text == "golden") return golden();
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("unknown target: " + text);
  std::string head = text.substr(0, colon);
  std::string body = text.substr(colon + 1);
  if (head == "const") return constant_digits(parse_const_body(body));
  if (head == "periodic") {
    std::vector<DigitSeq> cyc;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, '/')) cyc.push_back(parse_const_body(item));
    return periodic_in_n(cyc);
  }
  if (head == "exp") {
    auto c2 = body.find(':');
    std::string g = body.substr(0, c2);
    Word tail = c2 == std::string::npos ? Word{} : parse_digits(body.substr(c2 + 1));
    double gamma;
    if (g == "halflogB") {
      if (!(base > 1)) throw InvalidArgument("halflogB needs a base B > 1");
      gamma = 0.5 * std::log(base);
    } else {
      try {
        gamma = std::stod(g);
      } catch (const std::exception&) {
        throw InvalidArgument("bad gamma: " + g);
      }
    }
    return exp_first_digit(gamma, tail);
  }
  throw InvalidArgument("unknown target family: " + head);
}

TargetValue z_value(const TargetSpec& spec, std::size_t n) {
  TargetValue v;
  v.digits = spec.digits_at(n);
  v.z = v.digits.value(spec.depth);
  v.a1 = v.digits.is_zero() ? std::nullopt : v.digits.digit(1);
  v.tz = v.digits.shift(1).value(spec.depth);
  return v;
}

GrowthRate alpha_beta(const TargetSpec& spec, std::size_t n_min, std::size_t n_max) {
  if (spec.family == TargetFamily::kZero) throw UndefinedForZeroTarget("log a1(z_n)/n is undefined for z_n = 0");
  if (n_min == 0 || n_max < n_min) throw InvalidArgument("bad window");
  GrowthRate g;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    auto a = spec.a1(n);
    g.per_n.push_back(std::log(static_cast<double>(*a)) / static_cast<double>(n));
  }
  double limit = spec.family == TargetFamily::kExpFirstDigit ? spec.gamma : 0.0;
  g.alpha_hat = g.beta_hat = limit;
  for (double v : g.per_n) g.spread = std::max(g.spread, std::fabs(v - limit));
  return g;
}

}  // namespace shrinkdim
