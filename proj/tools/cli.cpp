#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "output.hpp"
#include "shrinkdim/errors.hpp"
#include "shrinkdim/massdist.hpp"
#include "shrinkdim/parallel.hpp"
#include "shrinkdim/predim.hpp"
#include "shrinkdim/pressure.hpp"
#include "shrinkdim/shrink.hpp"
#include "suites.hpp"

namespace shrinkdim::cli {

namespace {

struct Report {
  Table table;
  Json json;
  std::string svg;
  int status = 0;
};

struct OutputOptions {
  std::string out;
  std::string format = "csv";
};

std::string digit_or_inf(std::optional<Digit> d) { return d ? std::to_string(*d) : "inf"; }

std::string tri_name(Tri t) {
  switch (t) {
    case Tri::kTrue:
      return "IN";
    case Tri::kFalse:
      return "OUT";
    default:
      return "INCONCLUSIVE";
  }
}

Word parse_word(const std::string& text) {
  Word w;
  std::string item;
  auto flush = [&] {
    if (item.empty()) return;
    if (item.find_first_not_of("0123456789") != std::string::npos) throw InvalidArgument("bad digit: " + item);
    Digit d = std::stoull(item);
    if (d == 0) throw InvalidArgument("digits must be positive");
    w.push_back(d);
    item.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ') flush();
    else item += c;
  }
  flush();
  return w;
}

PotentialKind parse_potential(const std::string& text) {
  if (text == "phi1") return PotentialKind::kPhi1;
  if (text == "phi2") return PotentialKind::kPhi2;
  if (text == "phi3") return PotentialKind::kPhi3;
  if (text == "em") return PotentialKind::kEm;
  throw InvalidArgument("potential must be phi1, phi2, phi3 or em");
}

void check_base(double B) {
  if (!(B > 1) || !std::isfinite(B)) throw InvalidArgument("B must be a finite number > 1");
}

// Runs body(n) for n in [lo, hi] in parallel and rethrows the first error in n order.
template <class T>
std::vector<T> per_level(int lo, int hi, const std::function<T(int)>& body) {
  std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::optional<T>> results(count);
  std::vector<std::exception_ptr> errors(count);
  parallel_for(count, [&](std::size_t i) {
    try {
      results[i] = body(lo + static_cast<int>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  std::vector<T> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

// ---------------------------------------------------------------- predim

struct PredimArgs {
  double B = 4.0;
  std::string target = "zero";
  std::string n = "1..6";
  int M = 0;
  double tol = 1e-4;
  double margin = 0.01;
};

Report run_predim(const PredimArgs& a) {
  check_base(a.B);
  auto [lo, hi] = parse_range(a.n);
  TargetSpec spec = TargetSpec::parse(a.target, a.B);
  PredimOptions opt;
  opt.M = a.M;
  opt.tol = a.tol;
  opt.sum.margin = a.margin;
  auto results = per_level<PredimResult>(lo, hi, [&](int n) {
    return compute_predim(n, a.B, spec.a1(static_cast<std::size_t>(n)), opt);
  });
  Report r;
  auto& h = r.table.header;
  h = {"n", "a1z"};
  for (const char* name : {"s1", "s2", "s3"}) {
    add_enclosure_columns(h, name);
    h.push_back(std::string(name) + "_M");
    h.push_back(std::string(name) + "_note");
  }
  add_enclosure_columns(h, "sn");
  for (const char* name : {"branch", "branch_by_threshold", "check1", "check2", "check3", "check4"}) h.push_back(name);
  Series s1{"s_n1", {}, {}}, s2{"s_n2", {}, {}}, s3{"s_n3", {}, {}}, sn{"s_n", {}, {}};
  Json rows = Json::array();
  for (const auto& p : results) {
    std::vector<std::string> row{std::to_string(p.n), digit_or_inf(p.a1z)};
    for (const PredimRoot* root : {&p.s1, &p.s2, &p.s3}) {
      add_enclosure_cells(row, root->s);
      row.push_back(std::to_string(root->M));
      std::string note = root->conventional ? "conventional"
                         : root->no_root_in_unit ? "no_root_in_unit"
                         : root->lower_at_half ? "lower_at_half"
                                                    : "";
      row.push_back(note);
    }
    add_enclosure_cells(row, p.sn);
    row.push_back(branch_name(p.branch));
    row.push_back(p.branch_by_threshold ? "true" : "false");
    for (Verdict v : p.thresholds) row.push_back(verdict_name(v));
    r.table.add(row);
    double x = p.n;
    s1.x.push_back(x), s1.y.push_back(p.s1.s.mid());
    s2.x.push_back(x), s2.y.push_back(p.s2.s.mid());
    s3.x.push_back(x), s3.y.push_back(p.s3.s.mid());
    sn.x.push_back(x), sn.y.push_back(p.sn.mid());
  }
  r.json = summary("predim");
  r.json["parameters"] = Json{{"B", num(a.B)}, {"target", spec.str()}, {"n", a.n}, {"M", a.M}, {"tol", num(a.tol)}};
  r.json["rows"] = r.table.json();
  r.svg = svg_plot("pre-dimensional numbers, B=" + num(a.B) + ", target " + spec.str(), "n", "s", {s1, s2, s3, sn});
  return r;
}

// ---------------------------------------------------------------- sstar

struct SstarArgs {
  double B = 4.0;
  std::string target = "zero";
  std::string n = "1..8";
  int M = 0;
  double tol = 1e-4;
};

Report run_sstar(const SstarArgs& a) {
  check_base(a.B);
  auto [lo, hi] = parse_range(a.n);
  TargetSpec spec = TargetSpec::parse(a.target, a.B);
  PredimOptions opt;
  opt.M = a.M;
  opt.tol = a.tol;
  SstarEstimate est = sstar_estimate(spec, a.B, lo, hi, opt);
  Report r;
  r.table.header = {"n"};
  add_enclosure_columns(r.table.header, "sn");
  r.table.header.push_back("branch");
  add_enclosure_columns(r.table.header, "running_max");
  r.table.header.push_back("skipped");
  Series traj{"s_n (mid)", {}, {}}, run{"running max (upper)", {}, {}};
  for (int n = lo; n <= hi; ++n) {
    std::size_t i = static_cast<std::size_t>(n - lo);
    std::vector<std::string> row{std::to_string(n)};
    if (est.per_n[i]) {
      add_enclosure_cells(row, est.per_n[i]->sn);
      row.push_back(branch_name(est.per_n[i]->branch));
      traj.x.push_back(n), traj.y.push_back(est.per_n[i]->sn.mid());
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    add_enclosure_cells(row, {est.running_max_lo[i], est.running_max_hi[i]});
    row.push_back(est.skipped_reason[i]);
    run.x.push_back(n), run.y.push_back(est.running_max_hi[i]);
    r.table.add(row);
  }
  r.json = summary("sstar");
  r.json["parameters"] = Json{{"B", num(a.B)}, {"target", spec.str()}, {"n", a.n}, {"M", a.M}};
  r.json["window_max"] = enclosure_json({est.running_max_lo.back(), est.running_max_hi.back()});
  r.json["rows"] = r.table.json();
  r.svg = svg_plot("s_n trajectory, B=" + num(a.B) + ", target " + spec.str(), "n", "s", {traj, run});
  return r;
}

// ---------------------------------------------------------------- pressure

struct PressureArgs {
  double B = 4.0;
  std::string potential = "phi1";
  double alpha = 0.0;
  double beta = 0.0;
  int m = 2;
  int alphabet = 20;
  int depth = 8;
  double tol = 1e-4;
  std::optional<double> s;
};

Report run_pressure(const PressureArgs& a) {
  check_base(a.B);
  if (a.alphabet < 1) throw InvalidArgument("alphabet size must be >= 1");
  PotentialSpec phi;
  phi.kind = parse_potential(a.potential);
  phi.B = a.B;
  phi.alpha = a.alpha;
  phi.beta = a.beta;
  phi.m = a.m;
  Alphabet A;
  for (int d = 1; d <= a.alphabet; ++d) A.push_back(static_cast<Digit>(d));
  Report r;
  r.json = summary("pressure");
  r.json["parameters"] = Json{{"B", num(a.B)},       {"potential", phi.name()}, {"alphabet_max", a.alphabet},
                              {"depth", a.depth},    {"tol", num(a.tol)}};
  double s_eval;
  if (a.s) {
    s_eval = *a.s;
  } else {
    PressureRoot root = pressure_root(phi, A, a.depth, a.tol);
    r.json["root_estimate"] = enclosure_json(root.estimate);
    r.json["root_certified"] = enclosure_json(root.certified);
    r.json["root_estimate_certified"] = root.estimate_certified;
    s_eval = root.estimate.mid();
  }
  phi.s = s_eval;
  PressureEstimate est = pressure_estimate(phi, A, a.depth);
  r.json["s"] = num(s_eval);
  r.json["extrapolated"] = num(est.extrapolated);
  r.json["extrapolated_sup"] = num(est.extrapolated_sup);
  r.json["bracket"] = enclosure_json(est.bracket);
  r.json["variation_level1"] = num(variation_check(phi, 1, A));
  r.table.header = {"depth", "value", "value_sup"};
  Series v{"x = 0", {}, {}}, vs{"x = inf X_A", {}, {}};
  for (std::size_t i = 0; i < est.per_depth.size(); ++i) {
    r.table.add({std::to_string(i + 1), num(est.per_depth[i]), num(est.per_depth_sup[i])});
    v.x.push_back(static_cast<double>(i + 1)), v.y.push_back(est.per_depth[i]);
    vs.x.push_back(static_cast<double>(i + 1)), vs.y.push_back(est.per_depth_sup[i]);
  }
  r.json["rows"] = r.table.json();
  r.svg = svg_plot("finite-depth pressure, " + phi.name() + ", s=" + num(s_eval), "depth", "pressure", {v, vs});
  return r;
}

// ---------------------------------------------------------------- cover

struct CoverArgs {
  double B = 4.0;
  std::string target = "zero";
  std::string n = "2..6";
  std::string s = "auto+0.05";
  int M = 20;
  double tol = 1e-4;
};

Report run_cover(const CoverArgs& a) {
  check_base(a.B);
  auto [lo, hi] = parse_range(a.n);
  TargetSpec spec = TargetSpec::parse(a.target, a.B);
  PredimOptions opt;
  opt.M = a.M;
  opt.tol = a.tol;
  auto pre = per_level<PredimResult>(lo, hi, [&](int n) {
    return compute_predim(n, a.B, spec.a1(static_cast<std::size_t>(n)), opt);
  });
  double s;
  if (a.s.rfind("auto", 0) == 0) {
    double delta = a.s.size() > 4 ? std::stod(a.s.substr(4)) : 0.0;
    double top = -INFINITY, bottom = INFINITY;
    for (const auto& p : pre) {
      top = std::max(top, p.s1.s.hi);
      bottom = std::min(bottom, p.s1.s.lo);
    }
    s = delta >= 0 ? top + delta : bottom + delta;
  } else {
    s = std::stod(a.s);
  }
  if (!(s > 0.5) || !(s <= 1.5)) throw InvalidArgument("cover exponent must lie in (1/2, 3/2]");
  auto reports = per_level<CoverReport>(lo, hi, [&](int n) {
    return cover_svolume(pre[static_cast<std::size_t>(n - lo)], spec, s, a.M);
  });
  Report r;
  auto& h = r.table.header;
  h = {"n", "branch", "cutoff"};
  add_enclosure_columns(h, "level_sum");
  add_enclosure_columns(h, "inner");
  add_enclosure_columns(h, "total");
  h.push_back("log2_total_mid");
  std::vector<int> ns;
  std::vector<double> totals;
  Series curve{"log2 total", {}, {}};
  for (const auto& c : reports) {
    std::vector<std::string> row{std::to_string(c.n), branch_name(c.branch), std::to_string(c.cutoff)};
    add_enclosure_cells(row, c.level_sum);
    add_enclosure_cells(row, c.inner);
    add_enclosure_cells(row, c.total);
    double mid = c.total.mid();
    row.push_back(num(std::log2(mid)));
    r.table.add(row);
    ns.push_back(c.n);
    totals.push_back(mid);
    curve.x.push_back(c.n), curve.y.push_back(std::log2(mid));
  }
  r.json = summary("cover");
  r.json["parameters"] = Json{{"B", num(a.B)}, {"target", spec.str()}, {"n", a.n}, {"s", a.s}, {"M", a.M}};
  r.json["s"] = num(s);
  if (ns.size() >= 2) {
    DecayFit fit = fit_decay(ns, totals);
    r.json["fitted_slope"] = num(fit.slope);
    r.json["fitted_intercept"] = num(fit.intercept);
    bool decreasing = true, nondecreasing = true;
    for (std::size_t i = 1; i < totals.size(); ++i) {
      decreasing = decreasing && totals[i] < totals[i - 1];
      nondecreasing = nondecreasing && totals[i] >= totals[i - 1];
    }
    r.json["strictly_decreasing"] = decreasing;
    r.json["non_decreasing"] = nondecreasing;
  }
  r.json["rows"] = r.table.json();
  r.svg = svg_plot("cover s-volume, s=" + num(s) + ", target " + spec.str(), "n", "log2 total", {curve});
  return r;
}

// ---------------------------------------------------------------- witness

struct WitnessArgs {
  std::string wcase = "I";
  std::string u = "1";
  int ell = 2;
  int M = 3;
  int n = 5;
  double B = 4.0;
  std::string target = "zero";
  double t = 0.01;
  double eps = 0.51;
  double rate = 0.0;
  bool override_asymptotic = false;
  bool no_exact = false;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

Report run_witness(const WitnessArgs& a) {
  check_base(a.B);
  WitnessParams p;
  p.wcase = parse_witness_case(a.wcase);
  p.u = parse_word(a.u);
  p.ell = a.ell;
  p.M = a.M;
  p.n = a.n;
  p.B = a.B;
  p.spec = TargetSpec::parse(a.target, a.B);
  p.t = a.t;
  p.eps = a.eps;
  p.rate = a.rate;
  p.override_asymptotic = a.override_asymptotic;
  p.exact_solving = !a.no_exact;
  Witness w = build_witness(p);
  MembershipReport mr = membership_samples(w);
  GapReport g = gap_check(w);
  MeasureBoundReport mb = measure_bounds(w);
  HolderReport h = holder_check(w, holder_samples(w, a.samples, a.seed));
  ContentBound cb = content_lower_bound(w, h);

  Report r;
  r.table.header = {"blocks", "last", "left", "right", "length", "mass", "exact"};
  for (std::size_t i = 0; i < w.intervals.size(); ++i) {
    const auto& f = w.intervals[i];
    r.table.add({word_to_string(f.blocks), std::to_string(f.last), to_string(f.left), to_string(f.right),
                 num(f.length().get_d()), num(w.mass[i]), f.exact ? "true" : "false"});
  }
  Json j = summary("witness");
  j["parameters"] = Json{{"case", witness_case_name(p.wcase)},
                         {"u", word_to_string(p.u)},
                         {"ell", p.ell},
                         {"M", p.M},
                         {"n", p.n},
                         {"m", p.m()},
                         {"ell0", p.ell0()},
                         {"B", num(p.B)},
                         {"target", p.spec.str()},
                         {"t", num(p.t)},
                         {"eps", num(p.eps)},
                         {"rate", num(p.rate)},
                         {"override", p.override_asymptotic},
                         {"exact_solving", p.exact_solving}};
  j["s"] = enclosure_json(w.s);
  j["block_sum"] = enclosure_json(w.block_sum);
  Json checks = Json::array();
  for (const auto& c : w.checks) checks.push_back(Json{{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
  j["parameter_checks"] = checks;
  j["last_entries"] = w.last.digits;
  j["nominal_last_entry_weight"] = num(w.last.nominal_weight);
  j["nominal_last_entry_total"] = num(w.nominal_last_total);
  j["total_mass"] = num(w.total_mass());
  j["intervals"] = w.intervals.size();
  j["membership"] = Json{{"samples", mr.samples}, {"failures", mr.failures}, {"inconclusive", mr.inconclusive}};
  j["gaps"] = Json{{"pairs", g.pairs},
                   {"block_pairs", g.block_pairs},
                   {"last_entry_pairs", g.last_pairs},
                   {"violations", g.violations},
                   {"worst_block_ratio", num(g.worst_block_ratio)},
                   {"worst_last_ratio", num(g.worst_last_ratio)}};
  j["measure_bounds"] = Json{{"cylinder_checks", mb.cylinder_checks},
                             {"cylinder_violations", mb.cylinder_violations},
                             {"interval_checks", mb.interval_checks},
                             {"interval_violations", mb.interval_violations},
                             {"length_violations", mb.length_violations},
                             {"cylinder_constant", num(mb.cylinder_constant)},
                             {"interval_constant", num(mb.interval_constant)}};
  Json regimes = Json::array();
  for (std::size_t i = 0; i < h.count_by_regime.size(); ++i)
    regimes.push_back(Json{{"count", h.count_by_regime[i]}, {"max_ratio", num(h.max_ratio_by_regime[i])}});
  j["holder"] = Json{{"samples", h.samples},
                     {"seed", a.seed},
                     {"max_ratio", num(h.max_ratio)},
                     {"lemma_constant", num(h.lemma_constant)},
                     {"refined_constant", num(h.refined_constant)},
                     {"pass", h.pass()},
                     {"regimes", regimes}};
  j["content"] = Json{{"bound", num(cb.bound)}, {"empirical", num(cb.empirical)}, {"explicit", num(cb.explicit_form)}};
  r.json = j;
  return r;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string x = "golden";
  double B = 4.0;
  std::string target = "zero";
  int N = 30;
};

DigitSeq parse_point(const std::string& text) {
  if (text.find('/') != std::string::npos ||
      text.find_first_not_of("0123456789") == std::string::npos) {
    Rational q = parse_rational(text);
    if (q < 0 || q >= 1) throw InvalidArgument("x must lie in [0, 1)");
    return DigitSeq::of_rational(q);
  }
  TargetSpec spec = TargetSpec::parse(text);
  if (spec.family == TargetFamily::kPeriodicInN || spec.family == TargetFamily::kExpFirstDigit)
    throw InvalidArgument("x must be a rational, zero, golden or const:... digit description");
  return spec.digits_at(1);
}

Report run_simulate(const SimulateArgs& a) {
  check_base(a.B);
  if (a.N < 1) throw InvalidArgument("N must be >= 1");
  DigitSeq x = parse_point(a.x);
  TargetSpec spec = TargetSpec::parse(a.target, a.B);
  std::vector<Tri> verdicts(static_cast<std::size_t>(a.N));
  parallel_for(verdicts.size(), [&](std::size_t i) {
    verdicts[i] = membership_verdict(x, spec, a.B, static_cast<int>(i) + 1);
  });
  Report r;
  r.table.header = {"n", "verdict", "cumulative_hits"};
  Series cum{"hits up to n", {}, {}};
  std::vector<int> hits, unknown;
  for (int n = 1; n <= a.N; ++n) {
    Tri t = verdicts[static_cast<std::size_t>(n - 1)];
    if (t == Tri::kTrue) hits.push_back(n);
    if (t == Tri::kInconclusive) unknown.push_back(n);
    r.table.add({std::to_string(n), tri_name(t), std::to_string(hits.size())});
    cum.x.push_back(n), cum.y.push_back(static_cast<double>(hits.size()));
  }
  r.json = summary("simulate");
  r.json["parameters"] = Json{{"x", x.str()}, {"B", num(a.B)}, {"target", spec.str()}, {"N", a.N}};
  r.json["hits"] = hits;
  r.json["inconclusive"] = unknown;
  r.json["rows"] = r.table.json();
  r.svg = svg_plot("hit times, x=" + x.str(), "n", "hits", {cum});
  return r;
}

// ---------------------------------------------------------------- lemmas

struct LemmasArgs {
  std::uint64_t seed = 1;
  std::size_t words = 2000;
  Digit a_max = 200;
  std::size_t samples = 2000;
};

Report run_lemmas(const LemmasArgs& a) {
  std::vector<SuiteResult> suites;
  suites.push_back(cf_invariant_suite(a.words, 12, 50, a.seed));
  suites.push_back(identity_suite(a.samples / 4, a.seed + 1));
  suites.push_back(sandwich_suite(a.samples / 4, 4.0, a.seed + 2));
  suites.push_back(lemma_sum_suite(a.a_max, {0.6, 0.75, 1.0}, nullptr));
  suites.push_back(threshold_suite(predim_grid({4.0}, {"zero", "golden"}, 1, 2, {})));
  WitnessSuiteReport w = witness_suite(WitnessParams{}, a.samples, a.seed + 3);
  for (const SuiteResult* s : {&w.membership, &w.gaps, &w.measure, &w.holder, &w.content}) suites.push_back(*s);

  Report r;
  r.table.header = {"suite", "checks", "failures", "verdict", "detail"};
  bool all = true;
  Json arr = Json::array();
  for (const auto& s : suites) {
    r.table.add({s.name, std::to_string(s.checks), std::to_string(s.failures), s.pass() ? "PASS" : "FAIL", s.detail});
    arr.push_back(Json{{"suite", s.name},
                       {"checks", s.checks},
                       {"failures", s.failures},
                       {"verdict", s.pass() ? "PASS" : "FAIL"},
                       {"detail", s.detail}});
    all = all && s.pass();
  }
  r.json = summary("lemmas");
  r.json["parameters"] = Json{{"seed", a.seed}, {"words", a.words}, {"a_max", a.a_max}, {"samples", a.samples}};
  r.json["suites"] = arr;
  r.json["all_pass"] = all;
  r.status = all ? 0 : 1;
  return r;
}

// ---------------------------------------------------------------- driver

int emit(const Report& r, const OutputOptions& o, std::ostream& out) {
  if (!o.out.empty()) {
    write_text(o.out + ".csv", r.table.csv());
    write_text(o.out + ".json", r.json.dump(2) + "\n");
    if (!r.svg.empty()) write_text(o.out + ".svg", r.svg);
  }
  if (o.format == "json") {
    out << r.json.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << r.table.csv();
  }
  return r.status;
}

void add_output_options(CLI::App* sub, OutputOptions& o) {
  sub->add_option("--out", o.out, "Write PREFIX.csv, PREFIX.json and PREFIX.svg");
  sub->add_option("--format", o.format, "Standard output format")->check(CLI::IsMember({"csv", "json", "none"}));
}

}  // namespace

std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidArgument("bad range: " + text);
    return std::stoi(s);
  };
  auto dots = text.find("..");
  int lo, hi;
  if (dots == std::string::npos) {
    lo = hi = to_int(text);
  } else {
    lo = to_int(text.substr(0, dots));
    hi = to_int(text.substr(dots + 2));
  }
  if (lo < 1 || hi < lo) throw InvalidArgument("range must satisfy 1 <= lo <= hi: " + text);
  return {lo, hi};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shrinking-target dimension toolkit for continued fractions", "shrinkdim"};
  app.set_config("--config", "", "TOML configuration file; command-line flags take precedence");
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);

  OutputOptions oo;
  PredimArgs pa;
  SstarArgs sa;
  PressureArgs pr;
  CoverArgs ca;
  WitnessArgs wa;
  SimulateArgs si;
  LemmasArgs la;
  std::function<Report()> action;

  auto* predim = app.add_subcommand("predim", "Per-n table of s_{n,1..3}, s_n, branch and threshold checks");
  predim->add_option("--B", pa.B, "Base B > 1");
  predim->add_option("--target", pa.target, "zero | golden | const:P[|R] | periodic:S1/S2 | exp:G[:T]");
  predim->add_option("--n", pa.n, "Level range a..b");
  predim->add_option("--M", pa.M, "Head cutoff (0 = default per n)");
  predim->add_option("--tol", pa.tol, "Target enclosure width");
  predim->add_option("--margin", pa.margin, "Require roots above 1/2 + margin");
  add_output_options(predim, oo);
  predim->callback([&] { action = [&] { return run_predim(pa); }; });

  auto* sstar = app.add_subcommand("sstar", "Window trajectory of s_n and its running maximum");
  sstar->add_option("--B", sa.B, "Base B > 1");
  sstar->add_option("--target", sa.target, "Target sequence");
  sstar->add_option("--n", sa.n, "Level range a..b");
  sstar->add_option("--M", sa.M, "Head cutoff (0 = default per n)");
  sstar->add_option("--tol", sa.tol, "Target enclosure width");
  add_output_options(sstar, oo);
  sstar->callback([&] { action = [&] { return run_sstar(sa); }; });

  auto* pressure = app.add_subcommand("pressure", "Finite-alphabet pressure estimates and roots");
  pressure->add_option("--B", pr.B, "Base B > 1");
  pressure->add_option("--potential", pr.potential, "phi1 | phi2 | phi3 | em");
  pressure->add_option("--alpha", pr.alpha, "alpha for phi2");
  pressure->add_option("--beta", pr.beta, "beta for phi3");
  pressure->add_option("--m", pr.m, "m for em (1 or 2)");
  pressure->add_option("--alphabet", pr.alphabet, "Alphabet {1..K}");
  pressure->add_option("--depth", pr.depth, "Word depth");
  pressure->add_option("--tol", pr.tol, "Root tolerance");
  pressure->add_option("--s", pr.s, "Evaluate at this s instead of solving for the root");
  add_output_options(pressure, oo);
  pressure->callback([&] { action = [&] { return run_pressure(pr); }; });

  auto* cover = app.add_subcommand("cover", "Cover s-volume decay table and fitted slope");
  cover->add_option("--B", ca.B, "Base B > 1");
  cover->add_option("--target", ca.target, "Target sequence");
  cover->add_option("--n", ca.n, "Level range a..b");
  cover->add_option("--s", ca.s, "Exponent, or auto+d / auto-d relative to s_{n,1}");
  cover->add_option("--M", ca.M, "Head cutoff");
  cover->add_option("--tol", ca.tol, "Pre-dimension tolerance");
  add_output_options(cover, oo);
  cover->callback([&] { action = [&] { return run_cover(ca); }; });

  auto* witness = app.add_subcommand("witness", "Build a lower-bound witness and check its lemmas");
  witness->add_option("--case", wa.wcase, "I | II | III");
  witness->add_option("--u", wa.u, "Root cylinder word, comma separated");
  witness->add_option("--ell", wa.ell, "Block length");
  witness->add_option("--M", wa.M, "Block alphabet {1..M}");
  witness->add_option("--n", wa.n, "Level");
  witness->add_option("--B", wa.B, "Base B > 1");
  witness->add_option("--target", wa.target, "Target sequence");
  witness->add_option("--t", wa.t, "Content exponent");
  witness->add_option("--eps", wa.eps, "Margin");
  witness->add_option("--rate", wa.rate, "alpha (Case II) or beta (Case III)");
  witness->add_flag("--override", wa.override_asymptotic, "Build even if a parameter check fails");
  witness->add_flag("--no-exact", wa.no_exact, "Use the guaranteed core instead of exact solving");
  witness->add_option("--samples", wa.samples, "Hoelder samples");
  witness->add_option("--seed", wa.seed, "Sampling seed");
  add_output_options(witness, oo);
  witness->callback([&] { action = [&] { return run_witness(wa); }; });

  auto* simulate = app.add_subcommand("simulate", "Hit times of a point");
  simulate->add_option("--x", si.x, "Rational p/q, zero, golden or const:P[|R]");
  simulate->add_option("--B", si.B, "Base B > 1");
  simulate->add_option("--target", si.target, "Target sequence");
  simulate->add_option("--N", si.N, "Last level");
  add_output_options(simulate, oo);
  simulate->callback([&] { action = [&] { return run_simulate(si); }; });

  auto* lemmas = app.add_subcommand("lemmas", "Run the property suites at small scale");
  lemmas->add_option("--seed", la.seed, "Seed");
  lemmas->add_option("--words", la.words, "Random words for the continued-fraction suite");
  lemmas->add_option("--a-max", la.a_max, "Largest a for the summation suite");
  lemmas->add_option("--samples", la.samples, "Samples for the random suites");
  add_output_options(lemmas, oo);
  lemmas->callback([&] { action = [&] { return run_lemmas(la); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << error_json("UsageError", e.what());
    return 2;
  }
  try {
    set_thread_count(threads);
    return emit(action(), oo, out);
  } catch (const Error& e) {
    err << error_json(e.code(), e.what());
    return 2;
  } catch (const std::exception& e) {
    err << error_json("InternalError", e.what());
    return 3;
  }
}

}  // namespace shrinkdim::cli
