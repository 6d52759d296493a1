#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modcat/functors.hpp"
#include "modcat/io.hpp"
#include "modcat/laws.hpp"

namespace py = pybind11;
using namespace modcat;

namespace {

Model model_of(const std::string& text) { return model_from_json(json::parse(text)); }

Kind kind_of(const std::string& name) {
  const auto k = kind_from_string(name);
  if (!k) throw Error("unknown kind '" + name + "'");
  return *k;
}

}  // namespace

PYBIND11_MODULE(_modcat, m) {
  m.doc() = "Finite modal models over concrete categories";

  py::register_exception<Error>(m, "ModcatError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("normalize", [](const std::string& text) { return print(*parse(text)); }, py::arg("formula"));

  m.def(
      "evaluate",
      [](const std::string& model, const std::string& formula) {
        const auto mod = model_of(model);
        return truth_to_json(*mod.universe(), eval(mod, parse(formula))).get<std::vector<std::string>>();
      },
      py::arg("model"), py::arg("formula"));

  m.def(
      "announce",
      [](const std::string& model, const std::string& formula) {
        return model_to_json(announce(model_of(model), *parse(formula))).dump();
      },
      py::arg("model"), py::arg("formula"));

  m.def("functors", [] {
    std::vector<std::string> names;
    for (const auto& f : builtin_functors()) names.push_back(f.name);
    return names;
  });

  m.def(
      "transform",
      [](const std::string& functor, const std::string& model, std::optional<std::string> agent) {
        return model_to_json(transform(find_functor(functor), model_of(model), agent)).dump();
      },
      py::arg("functor"), py::arg("model"), py::arg("agent") = std::nullopt);

  m.def(
      "check_functor",
      [](const std::string& functor, const std::string& property, std::optional<std::string> fragment,
         std::size_t depth, std::size_t trials, std::uint64_t seed) {
        const auto p = property_from_string(property);
        if (!p) throw Error("unknown property '" + property + "'");
        CheckOptions options;
        options.depth = depth;
        options.trials = trials;
        options.seed = seed;
        if (fragment) {
          const auto fr = fragment_from_string(*fragment);
          if (!fr) throw Error("unknown fragment '" + *fragment + "'");
          options.fragment = *fr;
        }
        py::gil_scoped_release release;
        return report_to_json(check_preservation(find_functor(functor), *p, options)).dump();
      },
      py::arg("functor"), py::arg("property"), py::arg("fragment") = std::nullopt, py::arg("depth") = 3,
      py::arg("trials") = 200, py::arg("seed") = 0);

  m.def(
      "laws",
      [](const std::string& kind, std::size_t trials, std::uint64_t seed) {
        const auto k = kind_of(kind);
        py::gil_scoped_release release;
        return laws_to_json(k, gating_suite(k, trials, seed)).dump();
      },
      py::arg("kind"), py::arg("trials") = 200, py::arg("seed") = 0);
}
