#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qavg/commands.hpp"
#include "qavg/errors.hpp"
#include "qavg/pvz.hpp"
#include "qavg/rs_oracle.hpp"

namespace py = pybind11;
using namespace qavg;

namespace {

Report run_verify_py(std::uint64_t seed, std::size_t dim, std::size_t levels, int order, std::size_t trials) {
  return run_verify({seed, dim, levels, order, trials});
}

py::list states(const EigenReport& er) {
  py::list out;
  for (const EigenState& s : er.states) out.append(py::make_tuple(s.level, s.slot, s.eigenvalue, s.residual));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Operator averaging expansions for perturbed quantum Hamiltonians";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());

  py::class_<Model>(m, "Model")
      .def_readonly("name", &Model::name)
      .def_readonly("parameters", &Model::parameters)
      .def_readonly("labels", &Model::state_labels)
      .def_property_readonly("dim", [](const Model& x) { return x.basis.dim(); })
      .def_property_readonly("order", [](const Model& x) { return x.hamiltonian.order(); })
      .def_property_readonly("hbar", [](const Model& x) { return x.hamiltonian.hbar(); })
      .def_property_readonly("levels",
                             [](const Model& x) {
                               std::vector<std::pair<double, std::size_t>> out;
                               for (const Level& l : x.basis.levels()) out.emplace_back(l.energy, l.degeneracy);
                               return out;
                             })
      .def("h", [](const Model& x, std::size_t p) { return x.hamiltonian.coefficient(p).matrix(); }, py::arg("p"))
      .def("to_json", &model_to_json)
      .def("__repr__", [](const Model& x) { return "<Model " + x.name + " dim=" + std::to_string(x.basis.dim()) + ">"; });

  m.def("anharmonic", &anharmonic, py::arg("n_max") = 60);
  m.def("henon_heiles", &henon_heiles, py::arg("cutoff") = 14, py::arg("alpha") = 0.1, py::arg("beta") = 0.1);
  m.def("parse_model", &parse_model, py::arg("text"));
  m.def("load_model", [](const std::string& path) { return load_model(path); }, py::arg("path"));

  py::class_<Expansion>(m, "Expansion")
      .def_property_readonly("order", &Expansion::order)
      .def("f", [](const Expansion& e, int p) { return e.f(p).matrix(); })
      .def("w", [](const Expansion& e, int p) { return e.w(p).matrix(); })
      .def("k", [](const Expansion& e, int p) { return e.k(p).matrix(); })
      .def("phi", [](const Expansion& e, int p) { return e.phi(p).matrix(); })
      .def("k_truncated", [](const Expansion& e, double eps) { return k_truncated(e, eps).matrix(); })
      .def("phi_truncated", [](const Expansion& e, double eps) { return phi_truncated(e, eps).matrix(); })
      .def("states", [](const Expansion& e, double eps) { return states(eigen_report(e, eps)); }, py::arg("epsilon"),
           "List of (level, slot, eigenvalue, residual).")
      .def("eigenvalue_polynomial", &eigenvalue_polynomial, py::arg("level"));

  m.def(
      "expand", [](const Model& x, int order) { return expand(x.hamiltonian, x.basis, order); }, py::arg("model"),
      py::arg("order") = 2);
  m.def(
      "exact_eigenvalues", [](const Model& x, double eps) { return exact_eigen(x.hamiltonian, eps).values; },
      py::arg("model"), py::arg("epsilon"));

  py::class_<Report>(m, "Report")
      .def_readonly("command", &Report::command)
      .def_property_readonly("passed", &Report::passed)
      .def("render", [](const Report& r, const std::string& format) { return render(r, parse_format(format)); },
           py::arg("format") = "json");

  m.def(
      "run_example",
      [](const std::string& name, int order, std::vector<double> epsilons, double alpha, double beta) {
        ExampleOptions o;
        o.name = name;
        o.order = order;
        o.epsilons = std::move(epsilons);
        o.alpha = alpha;
        o.beta = beta;
        return run_example(o);
      },
      py::arg("name"), py::arg("order") = 2, py::arg("epsilons") = std::vector<double>{}, py::arg("alpha") = 0.1,
      py::arg("beta") = 0.1);
  m.def("run_verify", &run_verify_py, py::arg("seed") = 42, py::arg("dim") = 16, py::arg("levels") = 5,
        py::arg("order") = 4, py::arg("trials") = 100);
  m.def(
      "run_compare",
      [](const std::string& model, std::vector<int> orders, std::vector<double> epsilons) {
        CompareOptions o;
        o.model = model;
        o.orders = std::move(orders);
        o.epsilons = std::move(epsilons);
        return run_compare(o);
      },
      py::arg("model"), py::arg("orders") = std::vector<int>{1, 2, 3, 4}, py::arg("epsilons") = std::vector<double>{});
}
