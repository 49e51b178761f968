#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "homeuler/classify.hpp"
#include "homeuler/errors.hpp"
#include "homeuler/field.hpp"
#include "homeuler/period.hpp"

namespace py = pybind11;
using namespace homeuler;

namespace {

py::dict result_dict(const ClassificationResult& r) {
  py::dict d;
  d["kind"] = std::string(to_string(r.kind));
  d["count"] = r.count();
  d["windings"] = r.windings;
  d["extremal_rotation"] = r.extremal_rotation;
  d["boundary_grazing"] = r.boundary_grazing;
  return d;
}

py::dict profile_dict(const SolutionProfile& p) {
  py::dict d;
  d["lambda"] = p.lambda;
  d["bernoulli"] = p.bernoulli;
  d["pressure"] = p.pressure;
  d["winding"] = p.winding;
  d["type"] = std::string(to_string(p.type));
  d["theta"] = p.theta;
  d["psi"] = p.psi;
  d["psi_prime"] = p.psi_prime;
  return d;
}

SolutionProfile profile_from(const py::dict& d) {
  SolutionProfile p;
  p.lambda = d["lambda"].cast<double>();
  p.bernoulli = d.contains("bernoulli") ? d["bernoulli"].cast<double>() : 0.0;
  p.pressure = d["pressure"].cast<double>();
  p.winding = d.contains("winding") ? d["winding"].cast<int>() : 1;
  if (d.contains("type")) p.type = profile_type_from_string(d["type"].cast<std::string>());
  p.theta = d["theta"].cast<std::vector<double>>();
  p.psi = d["psi"].cast<std::vector<double>>();
  p.psi_prime = d["psi_prime"].cast<std::vector<double>>();
  validate_profile_grid(p);
  return p;
}

py::dict orbit_dict(const EllipticOrbit& o) {
  py::dict d;
  d["lambda"] = o.params.lambda;
  d["bernoulli"] = o.params.bernoulli;
  d["pressure"] = o.pressure;
  d["x_minus"] = o.x_minus;
  d["x_plus"] = o.x_plus;
  d["period"] = o.period;
  return d;
}

PeriodMethod method_from(const std::string& name) {
  if (name == "quadrature") return PeriodMethod::quadrature;
  if (name == "flight") return PeriodMethod::flight;
  throw DomainError("method must be 'quadrature' or 'flight'");
}

}  // namespace

PYBIND11_MODULE(_homeuler, m) {
  m.doc() = "Homogeneous steady Euler solutions: periods, classification, profiles";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NoEllipticOrbit>(m, "NoEllipticOrbit", domain.ptr());
  py::register_exception<DegenerateOrbit>(m, "DegenerateOrbit", domain.ptr());
  py::register_exception<ToleranceNotMet>(m, "ToleranceNotMet", base.ptr());
  py::register_exception<NoSolution>(m, "NoSolution", base.ptr());
  py::register_exception<ContinuumCase>(m, "ContinuumCase", base.ptr());
  py::register_exception<ClosureFailure>(m, "ClosureFailure", base.ptr());

  m.def("extremal_pressure", [](double lambda, double b) {
    return elliptic_center(Params::make(lambda, b)).extremal_pressure;
  }, py::arg("lambda_"), py::arg("bernoulli"));

  m.def("period", [](double lambda, double b, double pressure, const std::string& method, double tol) {
    return period(Params::make(lambda, b), pressure, method_from(method), tol);
  }, py::arg("lambda_"), py::arg("bernoulli"), py::arg("pressure"), py::arg("method") = "quadrature",
     py::arg("tol") = 1e-10);

  m.def("period_at_fraction", [](double lambda, double b, double s, const std::string& method, double tol) {
    return period_at_fraction(Params::make(lambda, b), s, method_from(method), tol);
  }, py::arg("lambda_"), py::arg("bernoulli"), py::arg("s"), py::arg("method") = "quadrature",
     py::arg("tol") = 1e-10);

  m.def("period_limits", [](double lambda, double b) {
    const auto l = period_limits(Params::make(lambda, b));
    return py::make_tuple(l.center_limit, l.boundary_limit);
  }, py::arg("lambda_"), py::arg("bernoulli"));

  m.def("count_elliptic", [](double lambda, int sign, const std::string& mode) {
    if (mode != "table" && mode != "scan") throw DomainError("mode must be 'table' or 'scan'");
    return result_dict(count_elliptic(lambda, sign, mode == "scan" ? CountMode::scan : CountMode::table));
  }, py::arg("lambda_"), py::arg("bernoulli_sign"), py::arg("mode") = "table");

  m.def("find_periodic", [](double lambda, int sign, int n, double tol) {
    return orbit_dict(find_periodic(lambda, sign, n, tol));
  }, py::arg("lambda_"), py::arg("bernoulli_sign"), py::arg("n"), py::arg("tol") = 1e-10);

  m.def("reconstruct_profile", [](double lambda, double b, double pressure, int n, int samples) {
    return profile_dict(reconstruct_profile(Params::make(lambda, b), pressure, n, samples));
  }, py::arg("lambda_"), py::arg("bernoulli"), py::arg("pressure"), py::arg("n"), py::arg("samples") = 512);

  m.def("conjugate_dual", [](const py::dict& p) { return profile_dict(conjugate_dual(profile_from(p))); },
        py::arg("profile"));

  m.def("classify_profile", [](const py::dict& p) {
    return std::string(to_string(classify_profile(profile_from(p))));
  }, py::arg("profile"));

  m.def("ma_count", [](double alpha) {
    const auto r = ma_count(alpha);
    py::dict d = result_dict(r.result);
    d["lambda"] = r.lambda;
    return d;
  }, py::arg("alpha"));

  m.def("euler_residual", [](const py::dict& p, double r_min, double r_max, int nr, int ntheta) {
    const auto res = euler_residual(velocity_field(profile_from(p), {r_min, r_max, nr, ntheta}));
    return py::make_tuple(res.div_norm, res.momentum_norm);
  }, py::arg("profile"), py::arg("r_min") = 1.0, py::arg("r_max") = 2.0, py::arg("nr") = 33,
     py::arg("ntheta") = 128);
}
