#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "perc/report.hpp"

namespace py = pybind11;
using namespace perc;

namespace {

RunOptions options(std::optional<int> bound, std::optional<int> depth, std::optional<std::uint64_t> seed, bool op) {
    RunOptions o;
    o.bound = bound;
    o.depth = depth;
    o.seed = seed;
    o.op = op;
    return o;
}

std::string dump(const Report& r) { return to_json(r).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Percolating subcategories and their quotients, over quiver representations";
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    py::class_<CategoryInstance, InstancePtr>(m, "Instance")
        .def_readonly("name", &CategoryInstance::name)
        .def_readonly("size_bound", &CategoryInstance::size_bound)
        .def_readonly("depth", &CategoryInstance::depth)
        .def_property_readonly("indecs",
                               [](const CategoryInstance& c) {
                                   std::vector<std::string> out;
                                   for (const auto& it : c.reg.items) out.push_back(it.name);
                                   return out;
                               })
        .def_property_readonly("subcategory",
                               [](const CategoryInstance& c) {
                                   std::vector<std::string> out;
                                   for (int i : c.a_indecs()) out.push_back(c.reg.items[i].name);
                                   return out;
                               })
        .def_property_readonly("fingerprint", [](const CategoryInstance& c) { return fingerprint(spec_to_json(c)); })
        .def("spec_json", [](const CategoryInstance& c) { return spec_to_json(c).dump(); })
        .def("hom_dim", [](const CategoryInstance& c, const std::string& a, const std::string& b) {
            return c.hom_dim(c.parse_mult(a), c.parse_mult(b));
        })
        .def("admits", [](const CategoryInstance& c, const std::string& a) { return c.admits(c.parse_mult(a)); })
        .def("__repr__", [](const CategoryInstance& c) { return "<percolate.Instance " + c.name + ">"; });

    m.def("builtin_names", &builtin_names);
    m.def(
        "load",
        [](const std::string& spec, std::optional<int> bound, std::optional<int> depth,
           std::optional<std::uint64_t> seed, bool op) { return load_instance(spec, options(bound, depth, seed, op)); },
        py::arg("spec"), py::kw_only(), py::arg("bound") = py::none(), py::arg("depth") = py::none(),
        py::arg("seed") = py::none(), py::arg("op") = false);
    m.def(
        "check_json", [](const CategoryInstance& c, const std::vector<std::string>& axioms) {
            return dump(run_check(c, axioms));
        },
        py::arg("instance"), py::arg("axioms") = std::vector<std::string>{});
    m.def("classify_json", [](const CategoryInstance& c) { return dump(run_classify(c)); });
    m.def(
        "lochom_json",
        [](const CategoryInstance& c, const std::string& from, const std::string& to, int depth) {
            return dump(run_lochom(c, from, to, depth));
        },
        py::arg("instance"), py::arg("source"), py::arg("target"), py::arg("depth") = -1);
    m.def("k0_json", [](const CategoryInstance& c) { return dump(run_k0(c)); });
    m.def("lift_json", [](const CategoryInstance& c, const std::string& conflation, const std::string& weak) {
        return dump(run_lift(c, conflation, weak));
    });
    m.def(
        "demo_json",
        [](const std::string& name, std::optional<int> bound, std::optional<int> depth,
           std::optional<std::uint64_t> seed) {
            py::gil_scoped_release nogil;
            return dump(run_demo(name, options(bound, depth, seed, false)));
        },
        py::arg("name"), py::kw_only(), py::arg("bound") = py::none(), py::arg("depth") = py::none(),
        py::arg("seed") = py::none());
    m.def("export_dot", &export_dot);
}
