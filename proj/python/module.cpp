#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rabi2q/fock.hpp"
#include "rabi2q/gfunction.hpp"
#include "rabi2q/observables.hpp"
#include "rabi2q/phase_scan.hpp"
#include "rabi2q/spectrum.hpp"

namespace py = pybind11;
using namespace rabi2q;

namespace {

ModelParams make_params(double eps1, double eps2, double omega, double gx, double gy, double gz, double g1, double g2) {
  ModelParams p{eps1, eps2, omega, gx, gy, gz, g1, g2};
  p.validate();
  return p;
}

py::dict point_dict(const PhasePoint& p) {
  py::dict d;
  d["g"] = p.g;
  d["eps"] = p.eps;
  d["e0a"] = p.e0a;
  d["e0b"] = p.e0b;
  d["dE"] = p.dE;
  d["phase"] = to_string(p.phase);
  d["mz"] = p.mz;
  d["nphot"] = p.nphot;
  d["concurrence"] = p.concurrence;
  d["flags"] = p.flags;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "two-qubit Rabi model: block spectra, ground states, phase scans";

  py::enum_<Block>(m, "Block").value("a", Block::a).value("b", Block::b).value("full", Block::full);
  py::enum_<Spin>(m, "Spin").value("plus", Spin::plus).value("minus", Spin::minus);
  py::enum_<Axis>(m, "Axis").value("g", Axis::g).value("eps", Axis::eps).value("gamma", Axis::gamma);

  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<InvalidBracketError>(m, "InvalidBracketError", PyExc_ValueError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init(&make_params), py::arg("eps1") = 0.0, py::arg("eps2") = 0.0, py::arg("omega") = 1.0,
           py::arg("gx") = 0.0, py::arg("gy") = 0.0, py::arg("gz") = 0.0, py::arg("g1") = 0.0, py::arg("g2") = 0.0)
      .def_readwrite("eps1", &ModelParams::eps1)
      .def_readwrite("eps2", &ModelParams::eps2)
      .def_readwrite("omega", &ModelParams::omega)
      .def_readwrite("gx", &ModelParams::gx)
      .def_readwrite("gy", &ModelParams::gy)
      .def_readwrite("gz", &ModelParams::gz)
      .def_readwrite("g1", &ModelParams::g1)
      .def_readwrite("g2", &ModelParams::g2);

  py::class_<BlockParams>(m, "BlockParams")
      .def_readonly("block", &BlockParams::block)
      .def_readonly("eps", &BlockParams::eps)
      .def_readonly("gamma", &BlockParams::gamma)
      .def_readonly("shift", &BlockParams::shift)
      .def_readonly("g", &BlockParams::g)
      .def_readonly("omega", &BlockParams::omega)
      .def("alpha", &BlockParams::alpha);

  py::class_<AxisWeights>(m, "AxisWeights")
      .def(py::init([](double g1, double g2, double eps1, double eps2, double gx, double gy) {
             return AxisWeights{g1, g2, eps1, eps2, gx, gy};
           }),
           py::arg("g1") = 0.5, py::arg("g2") = 0.5, py::arg("eps1") = 0.5, py::arg("eps2") = 0.5,
           py::arg("gx") = 0.5, py::arg("gy") = 0.5);

  m.def("reduce_params", [](const ModelParams& p) {
    const auto [a, b] = reduce_params(p);
    return py::make_tuple(a, b);
  });

  m.def("block_matrix", [](const ModelParams& p, Block block, int ncut) -> Eigen::MatrixXd {
    const auto [a, b] = reduce_params(p);
    if (block == Block::full) return build_full(p, ncut).matrix;
    return build_block(block == Block::a ? a : b, ncut).matrix;
  }, py::arg("params"), py::arg("block"), py::arg("ncut"));

  m.def("ground_energies", [](const ModelParams& p, double tol, int nmax) {
    const auto [a, b] = reduce_params(p);
    SolverOptions opts{tol, nmax, std::nullopt};
    return py::make_tuple(block_ground_energy(a, opts).energy, block_ground_energy(b, opts).energy);
  }, py::arg("params"), py::arg("tol") = 1e-8, py::arg("nmax") = 600);

  m.def("spectrum", [](const ModelParams& p, int k) {
    py::list out;
    for (const auto& l : four_series_spectrum(p, k)) {
      py::dict d;
      d["energy"] = l.energy;
      d["block"] = to_string(l.block);
      d["level"] = l.level;
      d["backend"] = to_string(l.backend);
      d["ncut"] = l.ncut;
      d["converged"] = l.converged;
      out.append(d);
    }
    return out;
  }, py::arg("params"), py::arg("k"));

  m.def("gfunction_energies", [](double delta, double g, double omega, double xmax, int k) {
    std::vector<double> e;
    for (const auto& r : gfunction_spectrum(delta, g, omega, xmax, k).roots) e.push_back(r.energy);
    return e;
  }, py::arg("delta"), py::arg("g"), py::arg("omega") = 1.0, py::arg("xmax") = 3.0, py::arg("k") = 10);

  m.def("concurrence", &concurrence, py::arg("rho"));

  m.def("scan_line", [](const ModelParams& base, const AxisWeights& w, Axis vary, double lo, double hi, double step) {
    py::list out;
    for (const auto& p : scan_line({base, w}, vary, lo, hi, step)) out.append(point_dict(p));
    return out;
  }, py::arg("base"), py::arg("weights") = AxisWeights{}, py::arg("vary") = Axis::g, py::arg("lo") = 0.0,
     py::arg("hi") = 1.2, py::arg("step") = 0.01);

  m.def("critical_point", [](const ModelParams& base, const AxisWeights& w, Axis vary, double lo, double hi) {
    return refine_critical({base, w}, vary, lo, hi).value;
  }, py::arg("base"), py::arg("weights") = AxisWeights{}, py::arg("vary") = Axis::g, py::arg("lo") = 0.0,
     py::arg("hi") = 1.2);
}
