#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfdim/dimension.hpp"
#include "cfdim/errors.hpp"
#include "cfdim/expansions.hpp"
#include "cfdim/sweep.hpp"

namespace py = pybind11;
using namespace cfdim;

namespace {

py::dict dimension(const std::string& alphabet, double tol, int tail_order, int m_max) {
  DimensionOptions opt;
  opt.tol = tol;
  opt.tail_order = tail_order;
  opt.m_max = m_max;
  const Alphabet a = parse_alphabet(alphabet);
  DimensionResult r;
  {
    py::gil_scoped_release release;
    r = bowen_dimension(a, opt);
  }
  py::dict d;
  d["delta"] = r.delta;
  d["error_estimate"] = r.error_estimate;
  d["grid_size"] = r.grid_size;
  d["pressure_residual"] = r.pressure_residual;
  d["empty"] = r.empty;
  return d;
}

py::dict qterms_dict(int m, int tail_order) {
  const QTerms q = qterms(m, tail_order);
  py::dict d;
  d["mu_phi_Q_Lphi_g"] = q.mu_phi_Q_Lphi_g.value;
  d["mu_phi_Q_h"] = q.mu_phi_Q_h.value;
  d["nu_Q_Lphi_g"] = q.nu_Q_Lphi_g.value;
  d["nu_Q_h"] = q.nu_Q_h.value;
  d["zeta2"] = q.zeta2;
  d["zeta3"] = q.zeta3;
  d["c20"] = coefficient_c20(q);
  return d;
}

std::string verify_json(const std::string& family, long long from, long long to, long long step, int order,
                        int grid, int jobs) {
  RunConfig cfg;
  cfg.from = from;
  cfg.to = to;
  cfg.step = step;
  cfg.order = order;
  cfg.grid = grid;
  cfg.jobs = jobs;
  cfg.format = "json";
  py::gil_scoped_release release;
  return to_json(run_verify(family, cfg)).dump();
}

}  // namespace

PYBIND11_MODULE(_cfdim, m) {
  m.doc() = "Hausdorff dimension of continued-fraction Cantor sets";

  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<DivergentSumError>(m, "DivergentSumError", numerical.ptr());
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("dimension", &dimension, py::arg("alphabet"), py::arg("tol") = 1e-12, py::arg("tail_order") = 8,
        py::arg("m_max") = 256);
  m.def(
      "pressure",
      [](const std::string& alphabet, double s, int m, int tail_order) {
        return pressure(parse_alphabet(alphabet), s, m, tail_order);
      },
      py::arg("alphabet"), py::arg("s"), py::arg("m") = 64, py::arg("tail_order") = 8);
  m.def("qterms", &qterms_dict, py::arg("m") = 64, py::arg("tail_order") = 8);
  m.def(
      "tree_coefficients",
      [](int j_max) {
        std::vector<std::string> out;
        for (const auto& a : tree_coefficients(j_max).a) out.push_back(to_fraction_string(a));
        return out;
      },
      py::arg("j_max"));
  m.def(
      "loglog_coefficients",
      [](int k_max) {
        std::map<std::pair<int, int>, std::string> out;
        for (const auto& [kl, c] : loglog_coefficients(k_max).c) out[kl] = to_fraction_string(c);
        return out;
      },
      py::arg("k_max"));
  m.def("c_ii1", &c_ii1, py::arg("i"));
  m.def(
      "hensley_coefficients",
      [](int order, double c20) { return hensley_expansion(order, c20).coefficients; },
      py::arg("order"), py::arg("c20"));
  m.def("good_estimate", &good_estimate, py::arg("N"), py::arg("k_max") = 3);
  m.def("verify_json", &verify_json, py::arg("family"), py::arg("from_") = 0, py::arg("to") = 0,
        py::arg("step") = 0, py::arg("order") = 3, py::arg("grid") = 0, py::arg("jobs") = 1);
}
