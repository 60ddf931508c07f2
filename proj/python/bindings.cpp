#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reproduce.hpp"
#include "toric/cy.hpp"
#include "toric/error.hpp"
#include "toric/monodromy.hpp"
#include "toric/polytope.hpp"

namespace py = pybind11;
using namespace toric;

namespace {

// Python ints go through their decimal form so entries of any size survive.
Vec to_vec(const py::handle& row) {
    Vec v;
    for (auto x : row) v.push_back(Int(py::str(x).cast<std::string>()));
    return v;
}

std::vector<Vec> to_vectors(const py::iterable& rows) {
    std::vector<Vec> out;
    for (auto r : rows) out.push_back(to_vec(r));
    return out;
}

py::int_ to_py(const Int& x) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(x.str().c_str(), nullptr, 10))); }

py::list to_py(const std::vector<Vec>& vs) {
    py::list out;
    for (const auto& v : vs) {
        py::list row;
        for (const auto& x : v) row.append(to_py(x));
        out.append(row);
    }
    return out;
}

LatticePolytope hull(const py::iterable& vertices) { return LatticePolytope::hull(to_vectors(vertices)); }

}  // namespace

PYBIND11_MODULE(_toric, m) {
    m.doc() = "Lattice polytopes, toric fibrations and monodromy";

    static py::exception<Error> toric_error(m, "ToricError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = toric_error;
            py::object inst = err(e.what());
            inst.attr("code") = e.code();
            inst.attr("context") = e.context();
            PyErr_SetObject(err.ptr(), inst.ptr());
        }
    });

    m.def("polar", [](const py::iterable& v) { return to_py(polar(hull(v)).vertices()); }, py::arg("vertices"),
          "Vertices of the polar polytope; raises ToricError(code='polar_undefined') unless the origin is interior.");
    m.def("vertices", [](const py::iterable& v) { return to_py(hull(v).vertices()); }, py::arg("points"));
    m.def("is_reflexive", [](const py::iterable& v) { return is_reflexive(hull(v)); }, py::arg("vertices"));
    m.def("points", [](const py::iterable& v) { return to_py(hull(v).points()); }, py::arg("vertices"));
    m.def(
        "hodge",
        [](const py::iterable& v) {
            HodgePair h = batyrev_hodge(hull(v));
            return py::make_tuple(to_py(h.h11), to_py(h.h21));
        },
        py::arg("vertices"), "(h11, h21) of the anticanonical hypersurface in the toric variety of the face fan of the polar.");
    m.def(
        "kodaira", [](const std::string& matrix, int power) { return classify_kodaira(power_monodromy(parse_matrix(matrix), power)).name(); },
        py::arg("matrix"), py::arg("power") = 1, "Kodaira symbol of matrix^power, matrix given as \"a,b;c,d\".");
    m.def(
        "run_criteria",
        [](const std::string& data_dir, const std::vector<std::string>& only) {
            repro::Fixtures fx(data_dir);
            std::vector<repro::Outcome> outcomes;
            {
                py::gil_scoped_release release;
                outcomes = repro::run_criteria(fx, only);
            }
            py::list out;
            for (const auto& o : outcomes) {
                py::dict d;
                d["id"] = o.id;
                d["tag"] = o.tag;
                d["title"] = o.title;
                d["pass"] = o.pass;
                d["failures"] = o.failures;
                out.append(d);
            }
            return out;
        },
        py::arg("data_dir"), py::arg("only") = std::vector<std::string>{});
}
