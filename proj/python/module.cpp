#include <b0calc/dsl.hpp>
#include <b0calc/families.hpp>
#include <b0calc/oracle.hpp>
#include <b0calc/wedge.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace b0calc;

namespace {

py::int_ big(const Int& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::list invariants(const std::vector<Int>& v) {
  py::list out;
  for (const Int& d : v) out.append(big(d));
  return out;
}

ExtraspecialKind kind_of(const std::string& kind) {
  if (kind == "p") return ExtraspecialKind::exponent_p;
  if (kind == "p2") return ExtraspecialKind::exponent_p2;
  throw Error("kind must be 'p' or 'p2', got '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_b0calc, m) {
  m.doc() = "Bogomolov and Schur multipliers of class-2 finite p-groups";

  py::register_exception<Error>(m, "GroupError");

  py::class_<PcPresentation>(m, "Group")
      .def_property_readonly("prime",
                             [](const PcPresentation& g) { return g.prime; })
      .def_property_readonly(
          "generators", [](const PcPresentation& g) { return g.gens; })
      .def_property_readonly(
          "noncentral",
          [](const PcPresentation& g) { return g.noncentral; })
      .def_property_readonly(
          "orders", [](const PcPresentation& g) { return g.orders; })
      .def("order",
           [](const PcPresentation& g) { return big(g.group_order()); })
      .def("validate",
           [](const PcPresentation& g) {
             ConsistencyReport rep = g.validate();
             return py::make_tuple(rep.pass(), rep.detail);
           })
      .def("derived_order",
           [](const PcPresentation& g) { return big(g.derived_order()); })
      .def("describe",
           [](const PcPresentation& g, const std::string& name) {
             return describe_dsl(g, name);
           },
           py::arg("name") = "G")
      .def("hash",
           [](const PcPresentation& g) { return presentation_hash(g); })
      .def("__repr__", [](const PcPresentation& g) {
        return "<Group of order " + g.group_order().str() + " on " +
               std::to_string(g.n()) + " generators>";
      });

  m.def("parse", [](const std::string& text) { return parse_dsl(text).pres; },
        "Parse presentation text into a Group");

  m.def("series_g", &series_g, py::arg("i"), py::arg("p"), py::arg("r") = 1);
  m.def("heisenberg", &heisenberg, py::arg("p"));
  m.def("extraspecial",
        [](long long p, int n, const std::string& kind) {
          return extraspecial(p, n, kind_of(kind));
        },
        py::arg("p"), py::arg("n"), py::arg("kind") = "p");
  m.def("metacyclic_split", &metacyclic_split, py::arg("p"), py::arg("r"),
        py::arg("b"), py::arg("a"));
  m.def("corollary_c2",
        [](long long p, int r, int b, int a1, int a2) {
          return corollary_c2(p, r, b, a1, a2).g;
        },
        py::arg("p"), py::arg("r"), py::arg("b"), py::arg("a1"),
        py::arg("a2"));
  m.def("abelian",
        [](long long p, std::vector<long long> orders) {
          std::vector<std::string> names;
          for (size_t i = 0; i < orders.size(); ++i)
            names.push_back("x" + std::to_string(i + 1));
          return PcPresentation(p, names, 0, orders);
        },
        py::arg("p"), py::arg("orders"));
  m.def("direct_product",
        [](const PcPresentation& p, const PcPresentation& q) {
          return direct_product(p, q).g;
        });

  m.def("bogomolov",
        [](const PcPresentation& g) {
          return invariants(bogomolov_multiplier(g));
        },
        "Invariant factors of the Bogomolov multiplier B0(G)");
  m.def("schur",
        [](const PcPresentation& g) {
          return invariants(m_star_invariants(g));
        },
        "Invariant factors of the Schur multiplier M*(G)");
  m.def("exterior_square",
        [](const PcPresentation& g) {
          return invariants(WedgeSystem(g).exterior_square_invariants());
        },
        "Invariant factors of the exterior square of G");
  m.def("bogomolov_oracle",
        [](const PcPresentation& g, long long cap) {
          return invariants(b0_oracle(g, Int(cap)));
        },
        py::arg("group"), py::arg("cap") = 243,
        "Brute-force B0(G) over all element pairs");
  m.def("schur_oracle",
        [](const PcPresentation& g, long long cap) {
          return invariants(m_oracle(g, Int(cap)));
        },
        py::arg("group"), py::arg("cap") = 243,
        "Brute-force M*(G) over all element pairs");
  m.def("certificate",
        [](const PcPresentation& g) {
          return WedgeSystem(g).certificate().text;
        },
        "Human-readable kernel generators and commuting-pair witnesses");
}
