#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opmod/analysis.hpp"
#include "opmod/preserver.hpp"
#include "opmod/serialize.hpp"
#include "opmod/suites.hpp"

namespace py = pybind11;
using namespace opmod;

namespace {

// Reports cross the boundary as their JSON document; the Python side parses it.
std::string analyze_json(const InstanceBundle& bundle, double tol, std::size_t budget, std::uint64_t seed,
                         std::size_t samples, std::size_t linking_pairs) {
    AnalysisOptions opt;
    opt.tol = ToleranceProfile::from_certification(tol);
    opt.budget = budget;
    opt.seed = seed;
    opt.samples = samples;
    opt.linking_pairs = linking_pairs;
    return report_to_string(analyze(bundle, opt));
}

py::object witness(const InstanceBundle& bundle, double tol) {
    const auto out = extract_witness(bundle.map, tol);
    if (!is_certified(out)) return py::none();
    return py::cast(certificate_of(out).u.scalars());
}

py::dict suite_row(const InvariantResult& r) {
    py::dict d;
    d["suite"] = r.suite;
    d["name"] = r.name;
    d["worst"] = r.worst;
    d["threshold"] = r.threshold;
    d["cases"] = r.cases;
    d["pass"] = r.pass;
    return d;
}

py::dict degradation_row(const DegradationRow& r) {
    py::dict d;
    d["grid"] = r.grid;
    d["w_inverse_norm"] = r.w_inverse_norm;
    d["u_min"] = r.u_min;
    d["certification_residual"] = r.certification_residual;
    d["psi_isometry_residual"] = r.psi_isometry_residual;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Certification of orthogonality preserving maps between Hilbert C*-modules";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto invalid = py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
    py::register_exception<ZeroModule>(m, "ZeroModule", invalid.ptr());
    py::register_exception<Incompatible>(m, "Incompatible", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<InternalInconsistency>(m, "InternalInconsistency", base.ptr());
    py::register_exception<GenerationError>(m, "GenerationError", base.ptr());
    auto format = py::register_exception<FormatError>(m, "FormatError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", format.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", format.ptr());

    py::class_<InstanceBundle>(m, "Instance")
        .def_property_readonly("blocks", [](const InstanceBundle& b) { return b.algebra.blocks(); })
        .def_property_readonly("n", [](const InstanceBundle& b) { return b.domain.generators(); })
        .def_property_readonly("m", [](const InstanceBundle& b) { return b.codomain.generators(); })
        .def_property_readonly("domain_projection",
                               [](const InstanceBundle& b) { return b.domain.projection().blocks(); })
        .def_property_readonly("codomain_projection",
                               [](const InstanceBundle& b) { return b.codomain.projection().blocks(); })
        .def_property_readonly("map_blocks", [](const InstanceBundle& b) { return b.map.matrix().blocks(); })
        .def_property_readonly("planted_u",
                               [](const InstanceBundle& b) -> py::object {
                                   if (!b.planted_u) return py::none();
                                   return py::cast(b.planted_u->scalars());
                               })
        .def_readonly("seed", &InstanceBundle::seed)
        .def_readonly("provenance", &InstanceBundle::provenance)
        .def_readonly("notes", &InstanceBundle::notes)
        .def("to_json", &instance_to_string)
        .def_static(
            "from_json",
            [](const std::string& text, double tol) {
                return instance_from_string(text, ToleranceProfile::from_certification(tol));
            },
            py::arg("text"), py::arg("tol") = kDefaultTolerances.certification)
        .def("__repr__", [](const InstanceBundle& b) {
            return "<Instance " + b.provenance + " blocks " + b.algebra.describe() + ">";
        });

    m.def("gallery", &gallery, py::arg("name"));
    m.def("gallery_names", &gallery_names);
    m.def(
        "planted", [](std::uint64_t seed, bool invertible) { return gen_planted_instance(seed, {}, invertible); },
        py::arg("seed"), py::arg("invertible") = false);
    m.def(
        "adversarial", [](std::uint64_t seed) { return gen_adversarial_instance(seed); }, py::arg("seed"));

    m.def("witness", &witness, py::arg("instance"), py::arg("tol") = kDefaultTolerances.certification,
          "Per-block scalars of u, or None when the map is not certified.");
    m.def("analyze_json", &analyze_json, py::arg("instance"), py::arg("tol") = kDefaultTolerances.certification,
          py::arg("budget") = 200, py::arg("seed") = 0, py::arg("samples") = 64, py::arg("linking_pairs") = 10,
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "run_suite",
        [](const std::string& suite, std::uint64_t seed, std::size_t samples) {
            std::vector<InvariantResult> rows;
            {
                py::gil_scoped_release release;
                rows = run_suite(suite, seed, samples);
            }
            py::list out;
            for (const auto& r : rows) out.append(suite_row(r));
            return out;
        },
        py::arg("suite"), py::arg("seed") = 0, py::arg("samples") = 20);

    m.def(
        "degradation",
        [](const std::string& base, const std::vector<int>& grids) {
            py::list out;
            for (const auto& r : degradation(base, grids)) out.append(degradation_row(r));
            return out;
        },
        py::arg("gallery") = "interval-C0-halfopen", py::arg("grids") = std::vector<int>{4, 8, 16, 32});

    m.attr("SCHEMA_VERSION") = kSchemaVersion;
}
