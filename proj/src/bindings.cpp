#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "moncol/cli.hpp"
#include "moncol/colimit.hpp"
#include "moncol/coproduct.hpp"
#include "moncol/graphs.hpp"
#include "moncol/presentation.hpp"
#include "moncol/spec.hpp"

namespace py = pybind11;
using namespace moncol;

namespace {

std::vector<Atom> to_names(const std::vector<std::string>& texts) {
  std::vector<Atom> out;
  for (const auto& t : texts) out.push_back(Atom::name(t));
  return out;
}

std::vector<std::string> to_strs(const Object& x) {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < x.sort_count(); ++s) {
    for (const auto& a : x.carrier(s)) out.push_back(a.str());
  }
  return out;
}

py::dict report_dict(const LawReport& r) {
  py::dict d;
  d["subject"] = r.subject;
  d["checked"] = r.checked;
  d["violations"] = r.violation_count;
  d["clean"] = r.clean();
  py::list examples;
  for (const auto& v : r.violations) examples.append(py::make_tuple(v.law, v.where, v.detail));
  d["counterexamples"] = examples;
  return d;
}

Monad free_monad(const std::vector<std::pair<std::string, std::size_t>>& ops, std::size_t depth,
                 const std::vector<std::string>& rules, const std::string& name) {
  Presentation p{Signature::single_sorted(ops), {}};
  for (const auto& r : rules) p.rules.push_back(parse_rule(r, p.signature));
  return presented_monad(p, depth, name);
}

MonadMorphism exception_map(const Monad& s, const Monad& t, const std::map<std::string, std::string>& m,
                            const std::string& name) {
  auto f = exception_morphism(s, t, [m](const Atom& e) {
    const auto it = m.find(e.text());
    if (it == m.end()) throw Error(ErrorKind::InvalidArgument, "exception " + e.text() + " is not mapped");
    return Atom::name(it->second);
  });
  f.name = name;
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monads on finite bases: laws, coproducts, coequalizers and colimits";

  static py::exception<Error> error(m, "MoncolError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      exc.attr("kind") = to_string(e.kind());
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<Monad>(m, "Monad")
      .def_property_readonly("name", &Monad::name)
      .def("carrier", [](const Monad& t, std::size_t n) { return to_strs(t.apply(sample_set(n))); }, py::arg("n"),
           "Atoms of T A for the set A of size n.")
      .def("unit",
           [](const Monad& t, std::size_t n) {
             const Object a = sample_set(n);
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& x : a.carrier(0)) out.emplace_back(x.str(), t.unit(a, 0, x).str());
             return out;
           },
           py::arg("n"))
      .def("truncation", &Monad::truncation)
      .def("check_laws",
           [](const Monad& t, std::size_t max_size) { return report_dict(monad_law_check(t, law_samples(t.shape(), max_size))); },
           py::arg("max_size") = 2)
      .def("__repr__", [](const Monad& t) { return "<Monad " + t.name() + ">"; });

  m.def("identity_monad", [] { return identity_monad(Shape::set()); });
  m.def("exception_monad", [](const std::vector<std::string>& e) { return exception_monad(Object::set(to_names(e))); },
        py::arg("exceptions"));
  m.def("terminal_monad", [] { return terminal_monad(Shape::set()); });
  m.def("reader_monad", [](const std::vector<std::string>& e) { return reader_monad(Shape::set(), to_names(e)); },
        py::arg("exponent"));
  m.def("writer_monad", [](std::size_t n, bool project) { return writer_monad(Shape::set(), Monoid::cyclic(n), project); },
        py::arg("n") = 2, py::arg("project") = false);
  m.def("powerset_monad", [] { return nonempty_powerset_monad(Shape::set()); });
  m.def("free_monad", &free_monad, py::arg("ops"), py::arg("depth"), py::arg("rules") = std::vector<std::string>{},
        py::arg("name") = "");

  m.def("coproduct",
        [](const std::vector<Monad>& monads, std::size_t max_size, std::size_t budget) {
          return coproduct_monad(monads, sample_sets(max_size), budget);
        },
        py::arg("monads"), py::arg("max_size") = 2, py::arg("budget") = 16);
  m.def("convergence_level",
        [](const Monad& r, std::size_t n) {
          const auto* impl = as_coproduct(r);
          if (!impl) throw Error(ErrorKind::InvalidArgument, r.name() + " is not a coproduct");
          return impl->layered(sample_set(n))->chain.status.level;
        },
        py::arg("coproduct"), py::arg("n"));
  m.def("verify_universal",
        [](const Monad& r, std::size_t max_size, std::size_t bound) {
          return report_dict(verify_universal(r, sample_sets(max_size), bound));
        },
        py::arg("coproduct"), py::arg("max_size") = 1, py::arg("bound") = 2);
  m.def("coequalize_exceptions",
        [](const std::vector<std::string>& source, const std::vector<std::string>& target,
           const std::map<std::string, std::string>& p, const std::map<std::string, std::string>& q,
           std::size_t max_size) {
          const Monad s = exception_monad(Object::set(to_names(source)));
          const Monad t = exception_monad(Object::set(to_names(target)));
          const auto c = coequalize_monads(exception_map(s, t, p, "p"), exception_map(s, t, q, "q"), sample_sets(max_size));
          return py::make_tuple(c.monad, report_dict(c.report));
        },
        py::arg("source"), py::arg("target"), py::arg("p"), py::arg("q"), py::arg("max_size") = 2,
        "Coequalizer of two exception morphisms given by maps on exceptions.");
  m.def("l_chain_vertices",
        [](std::size_t budget) {
          std::vector<std::size_t> vertices;
          for (const auto& w : free_algebra_chain(functor_L(), one_loop_graph(), budget).stages) vertices.push_back(w.size(0));
          return vertices;
        },
        py::arg("budget") = 3);

  m.def("check_spec", [](const std::string& text) { parse_spec(text); }, py::arg("text"),
        "Raises MoncolError when the spec does not parse.");
  m.def("run_command",
        [](const std::string& command, const std::vector<std::string>& specs, std::size_t budget, std::size_t depth,
           const std::vector<std::size_t>& sizes, std::uint64_t seed) {
          RunConfig c;
          c.command = command;
          c.specs = specs;
          c.budget = budget;
          c.depth = depth;
          c.sizes = sizes;
          c.seed = seed;
          const auto r = run_command(c);
          return py::make_tuple(r.exit_code, r.payload.dump());
        },
        py::arg("command"), py::arg("specs") = std::vector<std::string>{}, py::arg("budget") = 8,
        py::arg("depth") = 2, py::arg("sizes") = std::vector<std::size_t>{0, 1, 2}, py::arg("seed") = 0x5eed);
  m.attr("commands") = command_names();
}
