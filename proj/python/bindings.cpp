#include <algorithm>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dbtwell/core.hpp"
#include "dbtwell/dynamics.hpp"
#include "dbtwell/errors.hpp"
#include "dbtwell/oracle.hpp"
#include "dbtwell/wells.hpp"

namespace py = pybind11;
using namespace dbtwell;

namespace {

constexpr double kXMax = Grid::kDefaultHalfWidth;
constexpr std::size_t kPoints = Grid::kDefaultPoints;

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out({static_cast<py::ssize_t>(v.size())}, {static_cast<py::ssize_t>(sizeof(double))});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

RealWave wave_from(const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                   const Grid& grid) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
  return RealWave(grid, std::vector<double>(a.data(), a.data() + a.size()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Darboux-transformed sech^2 double wells: closed forms, oracle, dynamics";

  py::register_exception<InvalidEpsilon>(m, "InvalidEpsilon", PyExc_ValueError);
  py::register_exception<InvalidGrid>(m, "InvalidGrid", PyExc_ValueError);
  py::register_exception<GridTooNarrow>(m, "GridTooNarrow", PyExc_ValueError);
  py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", PyExc_RuntimeError);
  py::register_exception<BoundStateCountMismatch>(m, "BoundStateCountMismatch", PyExc_RuntimeError);

  m.def("seed_function",
        py::vectorize([](double eps, double x) { return seed_function(FactorizationEnergy(eps), x); }),
        py::arg("epsilon"), py::arg("x"));
  m.def("log_derivative_of_seed", py::vectorize([](double eps, double x) {
          return log_derivative_of_seed(FactorizationEnergy(eps), x);
        }),
        py::arg("epsilon"), py::arg("x"));
  m.def("potential",
        py::vectorize([](double eps, double x) { return potential(FactorizationEnergy(eps), x); }),
        py::arg("epsilon"), py::arg("x"));
  m.def("potential_from_log_derivative", py::vectorize([](double eps, double x) {
          return potential_from_log_derivative(FactorizationEnergy(eps), x);
        }),
        py::arg("epsilon"), py::arg("x"));
  m.def("separatrix_energy", [](double eps) { return separatrix_energy(FactorizationEnergy(eps)); },
        py::arg("epsilon"));
  m.def("curvature_at_origin", [](double eps) { return curvature_at_origin(eps); },
        py::arg("epsilon"));

  m.def("grid_nodes", [](double x_max, std::size_t n) { return to_array(Grid(x_max, n).nodes()); },
        py::arg("x_max") = kXMax, py::arg("n_points") = kPoints);
  m.def("ground_state",
        [](double eps, double x_max, std::size_t n) {
          return to_array(ground_state(FactorizationEnergy(eps), Grid(x_max, n)).samples);
        },
        py::arg("epsilon"), py::arg("x_max") = kXMax, py::arg("n_points") = kPoints);
  m.def("excited_state",
        [](double eps, double x_max, std::size_t n) {
          return to_array(excited_state(FactorizationEnergy(eps), Grid(x_max, n)).samples);
        },
        py::arg("epsilon"), py::arg("x_max") = kXMax, py::arg("n_points") = kPoints);
  m.def("base_ground_state",
        [](double x_max, std::size_t n) { return to_array(base_ground_state(Grid(x_max, n)).samples); },
        py::arg("x_max") = kXMax, py::arg("n_points") = kPoints);

  m.def("lowest_eigenpairs",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& v, double x_max,
           std::size_t k) {
          const Grid grid(x_max, static_cast<std::size_t>(v.size()));
          const TridiagonalHamiltonian h =
              build_hamiltonian(grid, std::span<const double>(v.data(), v.size()));
          py::list out;
          for (const Eigenpair& p : lowest_eigenpairs(h, k)) {
            out.append(py::make_tuple(p.energy, to_array(p.wave.samples)));
          }
          return out;
        },
        py::arg("potential_values"), py::arg("x_max"), py::arg("k"),
        "k lowest (energy, wave) pairs of -d2/dx2 + V on the symmetric grid implied by x_max and len(V)");

  m.def("verify_spectrum",
        [](double eps, double x_max, std::size_t n) {
          const SpectrumReport r = verify_spectrum(FactorizationEnergy(eps), Grid(x_max, n));
          py::dict d;
          d["epsilon"] = r.epsilon;
          d["e0_analytic"] = r.e0_analytic;
          d["e1_analytic"] = r.e1_analytic;
          d["e0_numeric"] = r.e0_numeric;
          d["e1_numeric"] = r.e1_numeric;
          d["e0_error"] = r.e0_error;
          d["e1_error"] = r.e1_error;
          d["psi0_residual"] = r.psi0_residual;
          d["psi1_residual"] = r.psi1_residual;
          d["psi0_overlap"] = r.psi0_overlap;
          d["psi1_overlap"] = r.psi1_overlap;
          d["bound_state_count"] = r.bound_state_count;
          return d;
        },
        py::arg("epsilon"), py::arg("x_max") = kXMax, py::arg("n_points") = kPoints);

  m.def("check_intertwining",
        [](double eps, const py::array_t<double, py::array::c_style | py::array::forcecast>& f,
           double x_max) {
          const Grid grid(x_max, static_cast<std::size_t>(f.size()));
          return check_intertwining(FactorizationEnergy(eps), wave_from(f, grid));
        },
        py::arg("epsilon"), py::arg("f"), py::arg("x_max") = kXMax);

  m.def("classify",
        [](double eps, double x_max, std::size_t n) {
          const WellClassification c = classify(eps, Grid(x_max, n));
          py::dict d;
          d["epsilon"] = c.epsilon;
          d["kind"] = std::string(to_string(c.kind));
          d["separatrix"] = c.separatrix;
          d["curvature_origin"] = c.curvature_origin;
          d["density_maxima_count"] = c.density_maxima_count;
          return d;
        },
        py::arg("epsilon"), py::arg("x_max") = kXMax, py::arg("n_points") = kPoints);

  m.def("check_bimodality_relation",
        [](double eps, double x_max, std::size_t n) {
          const BimodalityCheck b = check_bimodality_relation(FactorizationEnergy(eps), Grid(x_max, n));
          return py::make_tuple(b.lhs, b.rhs, b.rel_err);
        },
        py::arg("epsilon"), py::arg("x_max") = kXMax, py::arg("n_points") = kPoints,
        "(lhs, rhs, rel_err) of rho0''(0) = 2 (s - eps) rho0(0)");

  m.def("lc_state",
        [](double eps, double t, double x_max, std::size_t n) {
          const ComplexWave w = lc_state(FactorizationEnergy(eps), Grid(x_max, n), t);
          py::array_t<std::complex<double>> out({static_cast<py::ssize_t>(w.samples.size())},
                                                {static_cast<py::ssize_t>(sizeof(std::complex<double>))});
          std::copy(w.samples.begin(), w.samples.end(), out.mutable_data());
          return out;
        },
        py::arg("epsilon"), py::arg("t"), py::arg("x_max") = kXMax, py::arg("n_points") = kPoints);

  m.def("left_well_probability",
        [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& psi,
           double x_max) {
          const Grid grid(x_max, static_cast<std::size_t>(psi.size()));
          ComplexWave w{grid, std::vector<std::complex<double>>(psi.data(), psi.data() + psi.size())};
          return left_well_probability(w);
        },
        py::arg("psi"), py::arg("x_max") = kXMax);

  m.def("evolve_series",
        [](double eps, double t_max, std::size_t frames, double x_max, std::size_t n) {
          const OscillationSeries s = evolve_series(FactorizationEnergy(eps), Grid(x_max, n), t_max, frames);
          py::dict d;
          d["epsilon"] = s.epsilon;
          d["times"] = to_array(s.times);
          d["left_probability"] = to_array(s.left_probability);
          d["analytic_period"] = s.analytic_period;
          return d;
        },
        py::arg("epsilon"), py::arg("t_max"), py::arg("frames"), py::arg("x_max") = kXMax,
        py::arg("n_points") = kPoints);
}
