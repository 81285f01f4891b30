#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "torcor/classify.hpp"
#include "torcor/errors.hpp"
#include "torcor/json_io.hpp"
#include "torcor/markov.hpp"
#include "torcor/oracle.hpp"

namespace py = pybind11;

namespace {

using namespace torcor;

// The Python surface speaks the same JSON schema as the command line, so
// GMP types never cross the language boundary.
std::string dump(const Json& j) { return j.dump(2); }

IntVector int_vector(const std::vector<long>& v) {
    IntVector out;
    out.reserve(v.size());
    for (long x : v) out.push_back(Int(x));
    return out;
}

RatVector rat_vector(const std::vector<std::string>& v) {
    RatVector out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(parse_rational(Json(s)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_torcor, m) {
    m.doc() =
        "Exact algebra, classification and Markov dynamics of finite-to-one "
        "algebraic torus correspondences";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const CapError& e) {
            PyErr_SetString(PyExc_OverflowError, e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<Correspondence>(m, "Correspondence")
        .def_static(
            "from_json",
            [](const std::string& text) {
                return parse_correspondence(parse_text(text));
            },
            py::arg("text"),
            "Parse the map form {\"m\", \"M\", \"Delta\"} or the relation "
            "form {\"A\", \"B\"}")
        .def("to_json", [](const Correspondence& p) { return dump(to_json(p)); })
        .def("relation_json",
             [](const Correspondence& p) { return dump(relation_json(p)); })
        .def("dim", &Correspondence::dim)
        .def("compose", &Correspondence::compose, py::arg("rhs"))
        .def("adjoint", &Correspondence::adjoint)
        .def("power", &Correspondence::power, py::arg("n"))
        .def(
            "factor_by",
            [](const Correspondence& p, const std::string& carrier_json) {
                return p.factor_by(parse_subgroup(parse_text(carrier_json)));
            },
            py::arg("carrier_json"),
            "Factor by the finite subgroup with the given carrier lattice")
        .def("is_connected", &Correspondence::is_connected)
        .def("morphism",
             [](const Correspondence& p) { return to_string(p.classify_morphism()); })
        .def("kernel_orders",
             [](const Correspondence& p) {
                 return std::pair<std::string, std::string>(
                     p.kernel_first().order().get_str(),
                     p.kernel_second().order().get_str());
             })
        .def(py::self == py::self)
        .def("__repr__", [](const Correspondence& p) {
            return "Correspondence(" + to_json(p).dump() + ")";
        });

    m.def(
        "is_ergodic",
        [](const Correspondence& p) { return is_ergodic(p); }, py::arg("p"));
    m.def(
        "classify_json",
        [](const Correspondence& p) { return dump(to_json(classify(p))); },
        py::arg("p"));
    m.def(
        "spectrum_json",
        [](const Correspondence& p) { return dump(to_json(spectrum_report(p))); },
        py::arg("p"));
    m.def(
        "kernel_growth_json",
        [](const Correspondence& p, int max_power) {
            return dump(to_json(kernel_growth(p, max_power)));
        },
        py::arg("p"), py::arg("max_power"));
    m.def(
        "operator_json",
        [](const Correspondence& p, long radius) {
            return dump(to_json(operator_matrix(p, radius)));
        },
        py::arg("p"), py::arg("radius"));
    m.def(
        "orbit_json",
        [](const Correspondence& p, const std::vector<long>& character, long kmax) {
            return dump(to_json(character_orbit(p, int_vector(character), kmax)));
        },
        py::arg("p"), py::arg("character"), py::arg("kmax") = 16);
    m.def(
        "stepdist_json",
        [](const Correspondence& p, const std::vector<std::string>& x0) {
            return dump(to_json(step_distribution(p, rat_vector(x0))));
        },
        py::arg("p"), py::arg("x0"));
    m.def(
        "sample_json",
        [](const Correspondence& p, const std::vector<std::string>& x0, long steps,
           std::uint64_t seed) {
            return dump(to_json(sample_path(p, rat_vector(x0), steps, seed)));
        },
        py::arg("p"), py::arg("x0"), py::arg("steps"), py::arg("seed"));
    m.def(
        "oracle_json",
        [](std::uint64_t seed, long count) {
            return dump(to_json(oracle::consistency_suite(seed, count)));
        },
        py::arg("seed"), py::arg("count"),
        "Randomized consistency suite report");
    m.def(
        "oracle_pass",
        [](std::uint64_t seed, long count) {
            return oracle::consistency_suite(seed, count).pass;
        },
        py::arg("seed"), py::arg("count"));

    m.attr("__version__") = "1.0.0";
}
