#include "photometrix/core.hpp"
#include "photometrix/dicke.hpp"
#include "photometrix/errors.hpp"
#include "photometrix/fisher.hpp"
#include "photometrix/protocol.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace photometrix;

PYBIND11_MODULE(_photometrix, m) {
  m.doc() = "Loss-aware photonic metrology toolkit";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<Infeasible>(m, "Infeasible", PyExc_RuntimeError);
  py::register_exception<NoCrossing>(m, "NoCrossing", PyExc_RuntimeError);

  m.def("beamsplitter_prob", &beamsplitter_prob, py::arg("k"), py::arg("m"), py::arg("q"),
        py::arg("theta"));

  m.def("qfi_tfs_exact", py::overload_cast<int, double, double>(&qfi_tfs_exact), py::arg("n"),
        py::arg("mu"), py::arg("t"));
  m.def("qfi_fock_pair", py::overload_cast<int, int, double, double>(&qfi_fock_pair),
        py::arg("m"), py::arg("l"), py::arg("mu"), py::arg("t"));
  m.def("qfi_noon", py::overload_cast<int, double, double>(&qfi_noon), py::arg("n"),
        py::arg("mu"), py::arg("t"));
  m.def("qfi_tfs_poisson", &qfi_tfs_poisson, py::arg("n_abs"), py::arg("gamma") = 1.0);
  m.def("qfi_noon_poisson", &qfi_noon_poisson, py::arg("n_abs"), py::arg("gamma") = 1.0);
  m.def("cfi_nrm", py::overload_cast<int, int, double, double, double>(&cfi_nrm), py::arg("m"),
        py::arg("l"), py::arg("mu"), py::arg("t"), py::arg("g"));
  m.def("cfi_of_L", py::overload_cast<int, double, double, double>(&cfi_of_L), py::arg("n"),
        py::arg("mu"), py::arg("t"), py::arg("g") = 0.0);
  m.def(
      "optimize_squeezed",
      [](double n_abs, double gamma) {
        const SqueezedOptimum o = optimize_squeezed(n_abs, gamma);
        return py::make_tuple(o.value, o.beta_r, o.beta_s);
      },
      py::arg("n_abs"), py::arg("gamma") = 1.0);

  m.def(
      "advantage_ratio",
      [](int n, double n_abs, double eta, double gamma_t_ext, bool nrm) {
        return advantage_ratio(nrm ? BoundaryFamily::TfsNrm : BoundaryFamily::TfsQfi, n, n_abs,
                               eta, gamma_t_ext);
      },
      py::arg("n"), py::arg("n_abs"), py::arg("eta"), py::arg("gamma_t_ext"),
      py::arg("nrm") = false);
  m.def(
      "tfs_precision",
      [](int n, double total_time, double n_abs_max, double eta, double t_ext, double gamma) {
        const PrecisionResult r =
            optimize_nu(probe::TwinFock{n / 2}, Budget{total_time, n_abs_max, t_ext, eta}, gamma);
        py::dict d;
        d["precision"] = r.accumulated;
        d["nu"] = r.nu;
        d["t"] = r.t;
        d["capped"] = r.capped;
        return d;
      },
      py::arg("n"), py::arg("total_time") = 10.0, py::arg("n_abs") = 1.0, py::arg("eta") = 1.0,
      py::arg("t_ext") = 0.0, py::arg("gamma") = 1.0);

  m.def("switch_time", [](double n) { return dicke::switch_time(n); }, py::arg("n"));
  m.def("switch_time_formula", &dicke::switch_time_formula, py::arg("n"));
  m.def(
      "mean_photons",
      [](int n_atoms, double t, double coupling) {
        dicke::DickeConfig c;
        c.n_atoms = n_atoms;
        c.coupling = coupling;
        return dicke::mean_photons(c, t);
      },
      py::arg("n_atoms"), py::arg("t"), py::arg("coupling") = 1.0);
}
