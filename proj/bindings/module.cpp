#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "gseelab/certify.hpp"
#include "gseelab/errors.hpp"
#include "gseelab/gsee.hpp"
#include "gseelab/harness.hpp"
#include "gseelab/polyapprox.hpp"
#include "gseelab/quadrature.hpp"
#include "gseelab/rejection.hpp"

namespace py = pybind11;
using namespace gseelab;

PYBIND11_MODULE(_gsee_lab, m) {
    m.doc() = "spectral-level ground-state energy estimation lab";
    m.attr("__version__") = kVersionTag;

    py::register_exception<Error>(m, "GseeError");

    py::enum_<ModelDomain>(m, "ModelDomain")
        .value("PM1", ModelDomain::PM1)
        .value("ZeroOne", ModelDomain::ZeroOne);

    py::class_<SpectralMeasure>(m, "SpectralMeasure")
        .def_readonly("energies", &SpectralMeasure::energies)
        .def_readonly("weights", &SpectralMeasure::weights)
        .def_property_readonly("gap_true", &SpectralMeasure::gap_true)
        .def_property_readonly("overlap0", &SpectralMeasure::overlap0)
        .def("__len__", &SpectralMeasure::levels);

    m.def("synth", &synth, py::arg("energies"), py::arg("weights"),
          py::arg("domain") = ModelDomain::PM1);

    py::class_<GseeSchedule>(m, "GseeSchedule")
        .def_readonly("sigma", &GseeSchedule::sigma)
        .def_readonly("eps1", &GseeSchedule::eps1)
        .def_readonly("w", &GseeSchedule::w)
        .def_readonly("eps2", &GseeSchedule::eps2)
        .def_readonly("M", &GseeSchedule::M)
        .def_readonly("basic_branch", &GseeSchedule::basic_branch);

    m.def("make_schedule", &make_schedule, py::arg("eps"), py::arg("delta"),
          py::arg("Delta"), py::arg("eta"), py::arg("c1") = 1.0, py::arg("m1") = 1,
          py::arg("c2") = 1.0, py::arg("m2") = 1);

    m.def(
        "estimate",
        [](const SpectralMeasure& spec, double eps, double delta, double Delta,
           double eta, const std::string& backend, std::uint64_t seed) {
            EstimatorBackend b = backend == "poly" ? EstimatorBackend::poly()
                                 : backend == "trig" ? EstimatorBackend::trig()
                                                     : EstimatorBackend::ideal();
            AcceptanceOracle oracle(b.kind(), b.c2(), b.m2(), Rng::stream(seed, 0));
            const GseeSchedule s =
                make_schedule(eps, delta, Delta, eta, b.c1(), b.m1(), b.c2(), b.m2());
            const EstimateResult r = adv_gsee(s, b, oracle, spec);
            py::dict d;
            d["estimate"] = r.estimate;
            d["accepted_samples"] = r.accepted_samples;
            d["circuits"] = r.cost.circuits;
            d["max_depth"] = r.cost.max_depth;
            d["coarse_estimate"] = r.coarse_estimate;
            return d;
        },
        py::arg("spec"), py::arg("eps"), py::arg("delta"), py::arg("Delta"),
        py::arg("eta"), py::arg("backend") = "ideal", py::arg("seed") = 1);

    m.def(
        "certify",
        [](const SpectralMeasure& spec, double eps, double eta, double sigma,
           double E_hat, double delta, const std::string& backend,
           std::uint64_t seed) {
            EstimatorBackend b = backend == "poly" ? EstimatorBackend::poly()
                                 : backend == "trig" ? EstimatorBackend::trig()
                                                     : EstimatorBackend::ideal();
            AcceptanceOracle oracle(b.kind(), b.c2(), b.m2(), Rng::stream(seed, 0));
            const CertParams p = make_cert_params(eps, eta, sigma, E_hat, delta);
            const CertVerdict v = gsee_cert(p, spec, b, oracle);
            py::dict d;
            d["accept"] = v.decision == CertDecision::Accept;
            d["refined_estimate"] = v.refined_estimate;
            d["tail_mass"] = v.tail_mass;
            d["conditioned_variance"] = v.conditioned_variance;
            d["trials"] = v.trials;
            d["reason"] = v.reason;
            return d;
        },
        py::arg("spec"), py::arg("eps"), py::arg("eta"), py::arg("sigma"),
        py::arg("E_hat"), py::arg("delta") = 0.1, py::arg("backend") = "ideal",
        py::arg("seed") = 1);

    m.def(
        "threshold_poly_info",
        [](double a, double b, double eps1, int max_degree) {
            const BoundedPoly p = threshold_poly(a, b, eps1, ApproxOptions{max_degree});
            py::dict d;
            d["degree"] = p.degree;
            d["certified_error"] = p.certified_error;
            d["bound_ok"] = p.bound_ok;
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("eps1"), py::arg("max_degree") = 4000);

    m.def(
        "gaussian_cosine_info",
        [](double sigma, double eps2) {
            const CosineSeries s = gaussian_cosine_series(sigma, eps2);
            double csum = 0.0;
            for (double a : s.coeffs) csum += a;
            py::dict d;
            d["N"] = s.N;
            d["T"] = s.T;
            d["coeff_sum"] = csum;
            d["certified_error"] = s.certified_error;
            return d;
        },
        py::arg("sigma"), py::arg("eps2"));

    m.def("quadrature",
          [](const std::function<double(double)>& f, double a, double b, double tol) {
              return integrate(f, a, b, QuadratureOptions{tol});
          },
          py::arg("f"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-11);

    m.def("run_experiment_json", [](const std::string& config_text) {
        const ExperimentConfig cfg =
            config_from_json(nlohmann::json::parse(config_text));
        const RunRecord rec = run_experiment(cfg);
        return record_json(cfg, rec).dump();
    });

    m.def("lemma_suite", [](bool throw_on_violation) {
        const LemmaReport r = lemma_suite(throw_on_violation);
        py::dict d;
        d["tuples_checked"] = r.tuples_checked;
        d["violations"] = r.violations;
        d["failures"] = r.failures;
        return d;
    }, py::arg("throw_on_violation") = true);
}
