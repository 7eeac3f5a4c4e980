#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wdd/error.hpp"
#include "wdd/identities.hpp"
#include "wdd/masks.hpp"
#include "wdd/measure.hpp"
#include "wdd/pipelines.hpp"

namespace py = pybind11;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

wdd::ComplexVector to_cv(const CArray& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-d array");
  return wdd::ComplexVector(std::vector<std::complex<double>>(a.data(), a.data() + a.size()));
}

CArray to_array(const wdd::ComplexVector& v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::optional<wdd::ComplexVector> maybe_cv(const std::optional<CArray>& a) {
  if (!a) return std::nullopt;
  return to_cv(*a);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Wigner deconvolution phase retrieval";

  py::register_exception<wdd::Error>(mod, "WddError", PyExc_RuntimeError);

  py::class_<wdd::Mask>(mod, "Mask")
      .def_property_readonly("values", [](const wdd::Mask& m) { return to_array(m.values); })
      .def_property_readonly("spectrum", [](const wdd::Mask& m) { return to_array(m.spectrum()); })
      .def_property_readonly("kind", [](const wdd::Mask& m) { return wdd::to_string(m.kind); })
      .def_property_readonly("domain", [](const wdd::Mask& m) { return wdd::to_string(m.domain); })
      .def_readonly("support", &wdd::Mask::support)
      .def_readonly("offset", &wdd::Mask::offset)
      .def_readonly("seed", &wdd::Mask::seed)
      .def_property_readonly("d", &wdd::Mask::dim);

  mod.def("exp_bandlimited_mask", &wdd::exp_bandlimited_mask, py::arg("d"), py::arg("rho"));
  mod.def("random_bandlimited_mask", &wdd::random_bandlimited_mask, py::arg("d"), py::arg("rho"),
          py::arg("seed"));
  mod.def("exp_compact_mask", &wdd::exp_compact_mask, py::arg("d"), py::arg("delta"));
  mod.def(
      "user_mask",
      [](const CArray& values, const std::string& domain, std::size_t support) {
        return wdd::user_mask(to_cv(values), wdd::parse_support_domain(domain), support);
      },
      py::arg("values"), py::arg("domain"), py::arg("support"));
  mod.def("mu1", &wdd::mu1, py::arg("mask"), py::arg("kappa"));
  mod.def("mu2", &wdd::mu2, py::arg("mask"), py::arg("gamma"));
  mod.def("mu_compact_collapse", &wdd::mu_compact_collapse, py::arg("mask"), py::arg("kappa"));

  py::class_<wdd::MeasurementSet>(mod, "MeasurementSet")
      .def_readonly("Y", &wdd::MeasurementSet::Y)
      .def_readonly("d", &wdd::MeasurementSet::d)
      .def_readonly("K", &wdd::MeasurementSet::K)
      .def_readonly("L", &wdd::MeasurementSet::L)
      .def_property_readonly("snr_db", [](const wdd::MeasurementSet& y) -> std::optional<double> {
        if (!y.noise) return std::nullopt;
        return y.noise->snr_db;
      });

  mod.def(
      "spectrogram",
      [](const CArray& x, const wdd::Mask& m, std::size_t K, std::size_t L) {
        return wdd::spectrogram_subsampled(to_cv(x), m.values, K, L);
      },
      py::arg("x"), py::arg("mask"), py::arg("K"), py::arg("L"));
  mod.def("add_noise", &wdd::add_noise, py::arg("y"), py::arg("snr_db"), py::arg("seed"));

  py::class_<wdd::RecoveryResult>(mod, "RecoveryResult")
      .def_property_readonly("x", [](const wdd::RecoveryResult& r) { return to_array(r.x_e); })
      .def_readonly("error_db", &wdd::RecoveryResult::error_db)
      .def_readonly("runtime_seconds", &wdd::RecoveryResult::runtime_seconds)
      .def_readonly("algorithm", &wdd::RecoveryResult::algorithm)
      .def_property_readonly("warnings",
                             [](const wdd::RecoveryResult& r) { return r.diagnostics.warnings; });

  mod.def(
      "algorithm1",
      [](const wdd::MeasurementSet& y, const wdd::Mask& m, const std::optional<CArray>& truth) {
        return wdd::algorithm1(y, m, maybe_cv(truth));
      },
      py::arg("y"), py::arg("mask"), py::arg("truth") = py::none());
  mod.def(
      "algorithm2",
      [](const wdd::MeasurementSet& y, const wdd::Mask& m, std::size_t gamma,
         const std::string& solver, std::optional<double> alpha0, double q,
         std::size_t iterations, const std::optional<CArray>& truth) {
        wdd::Alg2Options opt;
        if (solver == "pinv") {
          opt.solver = wdd::Alg2Solver::Pinv;
        } else if (solver == "tikhonov") {
          opt.solver = wdd::Alg2Solver::Tikhonov;
        } else {
          throw py::value_error("solver must be 'pinv' or 'tikhonov'");
        }
        opt.tikhonov.q = q;
        opt.tikhonov.iterations = iterations;
        if (alpha0) {
          opt.auto_alpha0 = false;
          opt.tikhonov.alpha0 = *alpha0;
        }
        return wdd::algorithm2(y, m, gamma, opt, maybe_cv(truth));
      },
      py::arg("y"), py::arg("mask"), py::arg("gamma"), py::arg("solver") = "pinv",
      py::arg("alpha0") = py::none(), py::arg("q") = 0.8, py::arg("iterations") = 20,
      py::arg("truth") = py::none());
  mod.def(
      "compact_mask_pipeline",
      [](const wdd::MeasurementSet& y, const wdd::Mask& m, const std::optional<CArray>& truth) {
        return wdd::compact_mask_pipeline(y, m, maybe_cv(truth));
      },
      py::arg("y"), py::arg("mask"), py::arg("truth") = py::none());
  mod.def(
      "hio_er",
      [](const wdd::MeasurementSet& y, const wdd::Mask& m, std::size_t max_iter, double beta,
         const std::optional<CArray>& truth) {
        wdd::HioOptions opt;
        opt.max_iter = max_iter;
        opt.beta = beta;
        return wdd::hio_er(y, m, opt, maybe_cv(truth));
      },
      py::arg("y"), py::arg("mask"), py::arg("max_iter") = 600, py::arg("beta") = 0.9,
      py::arg("truth") = py::none());

  mod.def(
      "error_db",
      [](const CArray& truth, const CArray& estimate) {
        return wdd::error_db(to_cv(truth), to_cv(estimate));
      },
      py::arg("truth"), py::arg("estimate"));

  mod.def(
      "selfcheck",
      [](std::uint64_t seed) {
        py::list out;
        for (const auto& c : wdd::identities::full_suite(seed)) {
          py::dict row;
          row["suite"] = c.suite;
          row["name"] = c.name;
          row["max_rel_error"] = c.max_rel_error;
          row["tolerance"] = c.tolerance;
          row["passed"] = c.passed;
          out.append(row);
        }
        return out;
      },
      py::arg("seed") = 20240917);
}
