#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hnls/admissibility.hpp"
#include "hnls/boundary.hpp"
#include "hnls/closedform.hpp"
#include "hnls/dressing.hpp"
#include "hnls/error.hpp"
#include "hnls/io.hpp"
#include "hnls/monodromy.hpp"
#include "hnls/pipeline.hpp"
#include "hnls/spectral.hpp"
#include "hnls/verify.hpp"

namespace py = pybind11;
using namespace hnls;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

ExponentialTriple triple(double alpha, double omega, Complex c) { return {alpha, omega, c}; }

}  // namespace

PYBIND11_MODULE(_hnls, m) {
  m.doc() = "Half-line defocusing NLS with periodic boundary data";

  static py::exception<Error> error(m, "Error");
  static py::exception<SingularSystemError> singular(m, "SingularSystemError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SingularSystemError& e) {
      py::set_error(singular, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<PeriodicPair>(m, "PeriodicPair")
      .def_static("exponential", &PeriodicPair::exponential, py::arg("alpha"), py::arg("omega"), py::arg("c"))
      .def_static(
          "fourier",
          [](double tau, const std::vector<std::pair<int, Complex>>& g0, const std::vector<std::pair<int, Complex>>& g1) {
            std::vector<FourierMode> a, b;
            for (const auto& [n, c] : g0) a.push_back({n, c});
            for (const auto& [n, c] : g1) b.push_back({n, c});
            return PeriodicPair::fourier(tau, a, b);
          },
          py::arg("tau"), py::arg("g0") = std::vector<std::pair<int, Complex>>{},
          py::arg("g1") = std::vector<std::pair<int, Complex>>{})
      .def_static("zero", &PeriodicPair::zero, py::arg("tau") = 2.0 * kPi)
      .def_static("from_json", [](const py::object& o) { return pair_from_json(from_py(o)); })
      .def_property_readonly("tau", &PeriodicPair::tau)
      .def_property_readonly("omega", &PeriodicPair::omega)
      .def("eval",
           [](const PeriodicPair& p, double t) {
             const BoundaryValues v = p.eval(t);
             return py::make_tuple(v.g0, v.g1);
           })
      .def("to_json", [](const PeriodicPair& p) {
        nlohmann::json j = p;
        return to_py(j);
      });

  m.def("family_d_pair", &make_exponential_family_d, py::arg("alpha"), py::arg("omega"));

  m.def(
      "monodromy",
      [](const PeriodicPair& p, Complex k, double tol) { return monodromy(p, k, tol).full(); }, py::arg("pair"),
      py::arg("k"), py::arg("tol") = 1e-10, "Z(k) over one period");

  m.def(
      "spectral",
      [](const PeriodicPair& p, Complex k, double tol, bool limit) {
        SpectralOptions so;
        so.monodromy.tol = tol;
        const SpectralSample s = limit ? spectral_limit(p, k, -1.0, 32, so) : spectral_sample(p, k, so);
        py::dict d;
        d["k"] = s.k;
        d["G"] = s.g;
        d["sqrt_G"] = s.sqrt_g;
        d["Qb"] = s.qb;
        d["Pb"] = s.pb;
        d["Ab2"] = s.ab2;
        d["near_singular"] = s.near_singular;
        return d;
      },
      py::arg("pair"), py::arg("k"), py::arg("tol") = 1e-10, py::arg("limit") = false);

  m.def(
      "classify",
      [](double alpha, double omega, Complex c) {
        const Classification cl = classify(triple(alpha, omega, c));
        py::dict d;
        d["family"] = std::string(to_string(cl.family));
        d["verdict"] = std::string(to_string(cl.verdict));
        d["K"] = cl.K;
        d["residual"] = cl.residual;
        return d;
      },
      py::arg("alpha"), py::arg("omega"), py::arg("c"));

  m.def(
      "verdict",
      [](const PeriodicPair& p, int threads) {
        AdmissibilityOptions o;
        o.threads = threads;
        nlohmann::json j;
        {
          py::gil_scoped_release release;
          j = verdict(p, o);
        }
        return to_py(j);
      },
      py::arg("pair"), py::arg("threads") = 1);

  m.def(
      "build",
      [](const PeriodicPair& p, int threads) {
        BuildOptions o;
        o.admissibility.threads = threads;
        nlohmann::json j;
        {
          py::gil_scoped_release release;
          j = build(p, o);
        }
        return to_py(j);
      },
      py::arg("pair"), py::arg("threads") = 1, "Full build report; 'pole_data' is the dressing descriptor");

  py::class_<DressedSolution>(m, "DressedSolution")
      .def(py::init([](const std::vector<Complex>& poles, const std::vector<Complex>& residues, double omega) {
             return DressedSolution(PoleData{poles, residues, omega});
           }),
           py::arg("poles"), py::arg("residues"), py::arg("omega"))
      .def_static("from_json", [](const py::object& o) { return DressedSolution(pole_data_from_json(from_py(o))); })
      .def_property_readonly("n", &DressedSolution::n)
      .def_property_readonly("omega", &DressedSolution::omega)
      .def_property_readonly("tau", &DressedSolution::tau)
      .def("u", &DressedSolution::u, py::arg("x"), py::arg("t"))
      .def(
          "grid",
          [](const DressedSolution& s, const std::vector<double>& xs, const std::vector<double>& ts, int threads) {
            // Index grid, so arbitrary (non-uniform) coordinates are honoured.
            const int nx = static_cast<int>(xs.size()), nt = static_cast<int>(ts.size());
            std::vector<Complex> vals;
            {
              py::gil_scoped_release release;
              const Grid idx{0.0, std::max(1.0, nx - 1.0), nx, 0.0, std::max(1.0, nt - 1.0), nt};
              vals = evaluate_grid(
                  [&](double i, double j) { return s.u(xs[std::lround(i)], ts[std::lround(j)]); }, idx, threads);
            }
            py::array_t<Complex> out({static_cast<py::ssize_t>(nx), static_cast<py::ssize_t>(nt)});
            std::copy(vals.begin(), vals.end(), out.mutable_data());
            return out;
          },
          py::arg("x"), py::arg("t"), py::arg("threads") = 1, "u on the outer product of x and t, shape (len(x), len(t))")
      .def("stage_determinants", &DressedSolution::stage_determinants, py::arg("x"), py::arg("t"));

  m.def("u_family_d", &u_family_d, py::arg("alpha"), py::arg("omega"), py::arg("x"), py::arg("t"));
  m.def("u_two_pole", &u_section5, py::arg("x"), py::arg("t"));
  m.def("singularity_x", &singularity_x, py::arg("alpha"), py::arg("omega"));
  m.def("two_pole_singular_x", &section5_singular_x, py::arg("x_lo") = -4.0, py::arg("x_hi") = 2.0,
        py::arg("scan") = 6000);

  m.def(
      "verify",
      [](const DressedSolution& s, double x0, double x1, int nx, double t0, double t1, int nt,
         std::optional<PeriodicPair> pair) {
        const Grid g{x0, x1, nx, t0, t1, nt};
        nlohmann::json j;
        {
          py::gil_scoped_release release;
          j = verify_solution([&](double x, double t) { return s.u(x, t); }, s.tau(), g, pair);
        }
        return to_py(j);
      },
      py::arg("solution"), py::arg("x0"), py::arg("x1"), py::arg("nx"), py::arg("t0"), py::arg("t1"), py::arg("nt"),
      py::arg("pair") = std::nullopt);
}
