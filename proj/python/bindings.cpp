#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shrinkdim/cf_core.hpp"
#include "shrinkdim/errors.hpp"
#include "shrinkdim/massdist.hpp"
#include "shrinkdim/predim.hpp"
#include "shrinkdim/pressure.hpp"
#include "shrinkdim/shrink.hpp"
#include "shrinkdim/sums.hpp"
#include "shrinkdim/targets.hpp"

namespace py = pybind11;
using namespace shrinkdim;

namespace {

py::tuple pair(const Enclosure& e) { return py::make_tuple(e.lo, e.hi); }

py::dict predim_dict(int n, double B, const std::string& target, int M, double tol) {
  TargetSpec spec = TargetSpec::parse(target, B);
  PredimOptions opt;
  opt.M = M;
  opt.tol = tol;
  PredimResult r = compute_predim(n, B, spec.a1(static_cast<std::size_t>(n)), opt);
  py::dict d;
  d["n"] = r.n;
  d["B"] = r.B;
  d["a1z"] = r.a1z ? py::cast(*r.a1z) : py::none();
  d["s1"] = pair(r.s1.s);
  d["s2"] = pair(r.s2.s);
  d["s3"] = pair(r.s3.s);
  d["sn"] = pair(r.sn);
  d["branch"] = branch_name(r.branch);
  py::list checks;
  for (Verdict v : r.thresholds) checks.append(verdict_name(v));
  d["thresholds"] = checks;
  return d;
}

py::dict cylinder_dict(const Word& w) {
  CylinderInterval c = cylinder(w);
  py::dict d;
  d["left"] = to_string(c.left);
  d["right"] = to_string(c.right);
  d["left_closed"] = c.left_closed;
  d["right_closed"] = c.right_closed;
  d["length"] = to_string(c.length());
  return d;
}

py::dict witness_dict(int ell, int M, int n, double B, const std::string& target, double t, double eps) {
  WitnessParams p;
  p.ell = ell;
  p.M = M;
  p.n = n;
  p.B = B;
  p.spec = TargetSpec::parse(target, B);
  p.t = t;
  p.eps = eps;
  Witness w = build_witness(p);
  GapReport g = gap_check(w);
  MembershipReport mr = membership_samples(w);
  py::dict d;
  d["s"] = pair(w.s);
  d["intervals"] = w.intervals.size();
  d["total_mass"] = w.total_mass();
  d["gap_violations"] = g.violations;
  d["membership_failures"] = mr.failures + mr.inconclusive;
  return d;
}

py::tuple pressure_root_pair(const std::string& potential, double B, int alphabet, int depth, double tol) {
  PotentialSpec phi;
  phi.B = B;
  if (potential == "phi1") phi.kind = PotentialKind::kPhi1;
  else if (potential == "phi2") phi.kind = PotentialKind::kPhi2;
  else if (potential == "phi3") phi.kind = PotentialKind::kPhi3;
  else if (potential == "em") phi.kind = PotentialKind::kEm;
  else throw InvalidArgument("potential must be phi1, phi2, phi3 or em");
  Alphabet A;
  for (int d = 1; d <= alphabet; ++d) A.push_back(static_cast<Digit>(d));
  return pair(pressure_root(phi, A, depth, tol).estimate);
}

}  // namespace

PYBIND11_MODULE(_shrinkdim, m) {
  m.doc() = "Continued-fraction shrinking-target dimension toolkit";

  static py::exception<Error> error_type(m, "ShrinkdimError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, (e.code() + ": " + e.what()).c_str());
    }
  });

  m.def("predim", &predim_dict, py::arg("n"), py::arg("B") = 4.0, py::arg("target") = "zero", py::arg("M") = 0,
        py::arg("tol") = 1e-4, "Pre-dimensional numbers at level n as (lo, hi) pairs.");
  m.def("cylinder", &cylinder_dict, py::arg("word"), "Exact cylinder interval of a digit word.");
  m.def(
      "lemma_sum",
      [](Digit a, double t, std::uint64_t cutoff) { return pair(lemma_sum(a, t, cutoff)); }, py::arg("a"),
      py::arg("t"), py::arg("cutoff") = 16384, "Enclosure of a^t times the sum over b >= 1, b != a, of (b |a - b|)^-t.");
  m.def(
      "membership",
      [](const std::string& x, const std::string& target, double B, int n) {
        return membership(parse_rational(x), TargetSpec::parse(target, B), B, n);
      },
      py::arg("x"), py::arg("target"), py::arg("B"), py::arg("n"), "Exact shrinking-target membership of a rational.");
  m.def("witness_summary", &witness_dict, py::arg("ell") = 2, py::arg("M") = 3, py::arg("n") = 5, py::arg("B") = 4.0,
        py::arg("target") = "zero", py::arg("t") = 0.01, py::arg("eps") = 0.51,
        "Build the Case I witness and report mass, gaps and membership.");
  m.def("pressure_root", &pressure_root_pair, py::arg("potential") = "phi1", py::arg("B") = 4.0,
        py::arg("alphabet") = 20, py::arg("depth") = 6, py::arg("tol") = 1e-4,
        "Heuristic root of the finite-alphabet pressure.");
}
