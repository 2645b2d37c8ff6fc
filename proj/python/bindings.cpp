#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "orbitgf/catalog.hpp"
#include "orbitgf/closed_forms.hpp"
#include "orbitgf/constructions.hpp"
#include "orbitgf/error.hpp"
#include "orbitgf/invariants.hpp"
#include "orbitgf/oracle.hpp"
#include "orbitgf/ratfun.hpp"
#include "orbitgf/spec_io.hpp"

namespace py = pybind11;
using namespace orbitgf;

namespace {

py::object to_py(const Integer& z) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::object to_py(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(Integer(q.get_num())), to_py(Integer(q.get_den())));
}

Integer to_integer(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

struct Group {
  std::string source;
  FiniteGroup g;
};

Group make_group(const std::string& ref) { return {ref, build(named_spec(ref))}; }

Group group_from_json(const std::string& text) { return {"<spec>", build(parse_spec_text(text))}; }

py::list series(const RationalFunction& r, std::size_t terms) {
  py::list out;
  for (const auto& c : series_coeffs(r, terms)) out.append(to_py(c));
  return out;
}

py::list fractions(const RationalFunction& r) {
  py::list out;
  for (const auto& t : to_partial_fractions(r).terms) out.append(py::make_tuple(to_py(t.residue), to_py(t.m)));
  return out;
}

py::dict spectrum(const CentralizerSpectrum& s) {
  py::dict d;
  for (const auto& [m, z] : s.counts) d[py::int_(m)] = z;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Orbit-counting generating functions of finite groups";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<Group>(m, "Group")
      .def_property_readonly("source", [](const Group& g) { return g.source; })
      .def_property_readonly("order", [](const Group& g) { return g.g.order(); })
      .def_property_readonly("center_order", [](const Group& g) { return center(g.g).order(); })
      .def_property_readonly("max_abelian", [](const Group& g) { return max_abelian_order(g.g); })
      .def_property_readonly("class_count",
                             [](const Group& g) { return conjugacy_classes(g.g).class_count(); })
      .def_property_readonly("class_equation", [](const Group& g) { return spectrum(class_equation(g.g)); })
      .def_property_readonly("group_id", [](const Group& g) { return group_id(g.g); })
      .def("is_abelian", [](const Group& g) { return is_abelian(g.g); })
      .def("is_ac", [](const Group& g) { return is_ac_group(g.g); })
      .def("__repr__", [](const Group& g) {
        return "<orbitgf.Group " + g.source + " of order " + std::to_string(g.g.order()) + ">";
      });

  m.def("group", &make_group, py::arg("ref"), "Build a group from a named reference.");
  m.def("group_from_json", &group_from_json, py::arg("text"), "Build a group from GroupSpec JSON.");
  m.def("builtin_names", [] { return builtin_names(); });
  m.def("spec_json", [](const std::string& ref) { return canonical_dump(spec_to_json(named_spec(ref))); },
        py::arg("ref"));

  m.def("A", [](const Group& g) { return render_rational(A_of(g.g)); }, py::arg("group"));
  m.def("B", [](const Group& g) { return render_rational(B_of(g.g)); }, py::arg("group"));
  m.def("normalized_A", [](const Group& g) { return render_rational(normalized_A(g.g)); },
        py::arg("group"));
  m.def("normalized_B", [](const Group& g) { return render_rational(normalized_B(g.g)); },
        py::arg("group"));
  m.def("A_series", [](const Group& g, std::size_t terms) { return series(A_of(g.g), terms); },
        py::arg("group"), py::arg("terms") = 8);
  m.def("B_series", [](const Group& g, std::size_t terms) { return series(B_of(g.g), terms); },
        py::arg("group"), py::arg("terms") = 8);
  m.def("A_partial_fractions", [](const Group& g) { return fractions(A_of(g.g)); }, py::arg("group"));
  m.def("B_partial_fractions", [](const Group& g) { return fractions(B_of(g.g)); }, py::arg("group"));
  m.def("alpha", [](const Group& g, unsigned n) { return to_py(alpha_n(g.g, n)); }, py::arg("group"),
        py::arg("n"));
  m.def("record", [](const Group& g) { return json_to_py(record_to_json(compute_record(g.g))); },
        py::arg("group"));
  m.def("a_equivalent", [](const Group& g, const Group& h) { return a_equivalent(g.g, h.g); });
  m.def("b_equivalent", [](const Group& g, const Group& h) { return b_equivalent(g.g, h.g); });

  m.def(
      "class_eq_from_alpha",
      [](const py::list& alphas, std::size_t order) {
        std::vector<Integer> a;
        for (const auto& x : alphas) a.push_back(to_integer(x));
        return spectrum(class_eq_from_alpha(a, order));
      },
      py::arg("alphas"), py::arg("order"));

  m.def("alpha_bruteforce",
        [](const Group& g, unsigned n) { return to_py(alpha_bruteforce(g.g, n).count); },
        py::arg("group"), py::arg("n"));
  m.def("beta_bruteforce",
        [](const Group& g, unsigned n) { return to_py(beta_bruteforce(g.g, n).count); },
        py::arg("group"), py::arg("n"));

  m.def(
      "family_table",
      [](const std::string& family, unsigned p) {
        const auto f = family_table(family, p);
        return py::make_tuple(render_rational(f.normalized_A), render_rational(f.normalized_B));
      },
      py::arg("family"), py::arg("p"));
  m.def("table_families", &table_families, py::arg("p"));

  m.def(
      "scan",
      [](const std::string& predicate, const std::optional<std::string>& catalog) {
        const Catalog c = catalog ? load_catalog(*catalog) : build_builtin_catalog();
        return json_to_py(scan_to_json(scan(c, parse_scan_predicate(predicate))));
      },
      py::arg("predicate") = "all", py::arg("catalog") = py::none());

  m.def(
      "parse_rational_function",
      [](const std::string& text) { return render_rational(parse_rational_function(text)); },
      py::arg("text"), "Parse and re-render in canonical form.");
}
